#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tabkit/errors.hpp"
#include "tabkit/table.hpp"

namespace tabkit {

/// One literal replacement with word-processor escapes in pattern and
/// replacement: ^p = newline, ^t = tab, ^^ = caret. The expected count,
/// when given, turns the step into an auditable check.
struct ReplaceStep {
    std::string pattern;
    std::string replacement;
    std::optional<long> expected_count;
};

/// Names for the three slots a composite cell splits into.
struct CompositeFieldSpec {
    std::array<std::string, 3> output_names; // value, lo, hi
};

/// Splits composite cells of one column into three columns.
struct SplitColumnStep {
    size_t column = 0; // 1-based
    CompositeFieldSpec spec;
};

struct DropColumnStep {
    std::string name;
};

/// Overwrites one cell; coordinates are 1-based over the record area.
struct PatchStep {
    size_t row = 0;
    size_t column = 0;
    CellValue value;
};

/// Turns every occurrence of each listed separator character into exactly
/// one tab. Consecutive tabs are never collapsed.
struct UnifyStep {
    std::string separators;
};

/// Declares whether the first tabular line is a header.
struct HeaderStep {
    bool has_header = true;
};

using Step =
    std::variant<ReplaceStep, SplitColumnStep, DropColumnStep, PatchStep, UnifyStep, HeaderStep>;

struct CleanupScript {
    std::vector<Step> steps;
};

/// One audit row. step_index is the 1-based script step, or 0 for the
/// tabularization boundary entry.
struct AuditEntry {
    size_t step_index = 0;
    std::string description;
    size_t count = 0;
    std::optional<long> expected;
    bool passed = true;
};

struct AuditLog {
    std::vector<AuditEntry> entries;

    bool all_passed() const;
};

/// Outcome of a script run. A hard failure leaves `table` empty and fills
/// `error`; the audit always covers the steps that did execute.
struct RunResult {
    std::optional<Datatable> table;
    AuditLog audit;
    std::optional<std::string> error;

    bool ok() const { return table.has_value() && !error; }
};

std::string expand_escapes(std::string_view text);

struct ReplaceResult {
    std::string text;
    size_t count = 0;
};

/// Replaces all non-overlapping left-to-right occurrences of the expanded
/// pattern. Pattern empty after expansion: ScriptError.
ReplaceResult replace_all(std::string_view text, std::string_view pattern,
                          std::string_view replacement);

struct SplitFields {
    CellValue value;
    CellValue lo;
    CellValue hi; // Empty for single-speed and open-ended forms
    bool open_ended = false;
};

/// Extracts the three slots of a "<int> (<int>[-<int>][ <]?)" cell.
/// Non-matching cell: ScriptError naming the cell.
SplitFields split_composite_field(std::string_view cell);

struct UnifyResult {
    std::vector<std::string> lines;
    size_t replaced = 0;
};

UnifyResult unify_separators(const std::vector<std::string>& lines, std::string_view separators);

/// Parses the line-oriented script format: one step per line, fields
/// separated by tabs, '#' starts a comment. Syntax errors: ScriptError.
CleanupScript parse_script(std::string_view text);

CleanupScript load_script(const std::string& path);

/// Runs the steps in order. Text-level steps (replace, unify) act on the raw
/// text; the first table-level step (split, drop, patch) or the end of the
/// script tabularizes the tab-separated lines, honouring any header
/// declaration seen so far. Expected-count mismatches fail their audit entry
/// but the run continues; hard errors stop the run.
RunResult run_script(const CleanupScript& script, std::string_view input);

} // namespace tabkit
