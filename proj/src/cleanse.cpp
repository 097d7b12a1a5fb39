#include "tabkit/cleanse.hpp"

#include <fstream>
#include <sstream>

#include "tabkit/utf8.hpp"

namespace tabkit {

bool AuditLog::all_passed() const {
    for (const auto& entry : entries) {
        if (!entry.passed) return false;
    }
    return true;
}

std::string expand_escapes(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '^' && i + 1 < text.size()) {
            char next = text[i + 1];
            if (next == 'p') {
                out.push_back('\n');
                ++i;
                continue;
            }
            if (next == 't') {
                out.push_back('\t');
                ++i;
                continue;
            }
            if (next == '^') {
                out.push_back('^');
                ++i;
                continue;
            }
        }
        out.push_back(text[i]);
    }
    return out;
}

ReplaceResult replace_all(std::string_view text, std::string_view pattern,
                          std::string_view replacement) {
    std::string needle = expand_escapes(pattern);
    std::string repl = expand_escapes(replacement);
    if (needle.empty()) throw ScriptError("replace pattern is empty");

    ReplaceResult result;
    result.text.reserve(text.size());
    size_t pos = 0;
    while (pos < text.size()) {
        size_t hit = text.find(needle, pos);
        if (hit == std::string_view::npos) break;
        result.text.append(text, pos, hit - pos);
        result.text.append(repl);
        result.count += 1;
        pos = hit + needle.size();
    }
    result.text.append(text, pos, text.size() - pos);
    return result;
}

SplitFields split_composite_field(std::string_view cell) {
    auto parts = parse_composite(cell);
    if (!parts) {
        throw ScriptError("cell \"" + std::string(cell) + "\" does not match the composite shape");
    }
    SplitFields out;
    out.value = CellValue(parts->value);
    out.lo = CellValue(parts->lo);
    if (parts->hi) out.hi = CellValue(*parts->hi);
    out.open_ended = parts->open_ended;
    return out;
}

UnifyResult unify_separators(const std::vector<std::string>& lines, std::string_view separators) {
    UnifyResult result;
    result.lines.reserve(lines.size());
    for (const auto& line : lines) {
        std::string out;
        out.reserve(line.size());
        for (char c : line) {
            if (separators.find(c) != std::string_view::npos) {
                out.push_back('\t');
                result.replaced += 1;
            } else {
                out.push_back(c);
            }
        }
        result.lines.push_back(std::move(out));
    }
    return result;
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(pos));
            break;
        }
        lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (size_t i = 0; i < lines.size(); ++i) {
        if (i) out.push_back('\n');
        out.append(lines[i]);
    }
    return out;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    size_t pos = 0;
    while (pos <= line.size()) {
        size_t tab = line.find('\t', pos);
        if (tab == std::string_view::npos) {
            fields.emplace_back(line.substr(pos));
            break;
        }
        fields.emplace_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return fields;
}

long parse_script_int(const std::string& field, size_t line_no, const char* what) {
    try {
        size_t used = 0;
        long value = std::stol(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        throw ScriptError("line " + std::to_string(line_no) + ": " + what + " must be an integer, got \"" +
                          field + "\"");
    }
}

} // namespace

CleanupScript parse_script(std::string_view text) {
    CleanupScript script;
    size_t line_no = 0;
    for (const auto& raw : split_lines(text)) {
        ++line_no;
        if (raw.empty() || raw[0] == '#') continue;
        std::vector<std::string> f = split_fields(raw);
        const std::string& verb = f[0];
        auto want = [&](size_t lo, size_t hi) {
            if (f.size() < lo || f.size() > hi) {
                throw ScriptError("line " + std::to_string(line_no) + ": \"" + verb + "\" takes " +
                                  std::to_string(lo - 1) + (hi > lo ? "-" + std::to_string(hi - 1) : "") +
                                  " fields, got " + std::to_string(f.size() - 1));
            }
        };
        if (verb == "replace") {
            want(3, 4);
            ReplaceStep step{f[1], f[2], std::nullopt};
            if (expand_escapes(step.pattern).empty()) {
                throw ScriptError("line " + std::to_string(line_no) + ": replace pattern is empty");
            }
            if (f.size() == 4) {
                long expected = parse_script_int(f[3], line_no, "expected count");
                if (expected < 0) {
                    throw ScriptError("line " + std::to_string(line_no) + ": expected count is negative");
                }
                step.expected_count = expected;
            }
            script.steps.push_back(std::move(step));
        } else if (verb == "split") {
            want(5, 5);
            long column = parse_script_int(f[1], line_no, "column");
            if (column < 1) {
                throw ScriptError("line " + std::to_string(line_no) + ": column must be >= 1");
            }
            script.steps.push_back(
                SplitColumnStep{static_cast<size_t>(column), CompositeFieldSpec{{f[2], f[3], f[4]}}});
        } else if (verb == "drop") {
            want(2, 2);
            script.steps.push_back(DropColumnStep{f[1]});
        } else if (verb == "patch") {
            want(4, 4);
            long row = parse_script_int(f[1], line_no, "row");
            long column = parse_script_int(f[2], line_no, "column");
            if (row < 1 || column < 1) {
                throw ScriptError("line " + std::to_string(line_no) + ": patch coordinates must be >= 1");
            }
            script.steps.push_back(PatchStep{static_cast<size_t>(row), static_cast<size_t>(column),
                                             cell_from_text(expand_escapes(f[3]))});
        } else if (verb == "unify") {
            want(2, 2);
            if (f[1].empty()) {
                throw ScriptError("line " + std::to_string(line_no) + ": unify needs separator characters");
            }
            script.steps.push_back(UnifyStep{f[1]});
        } else if (verb == "header") {
            want(2, 2);
            if (f[1] != "yes" && f[1] != "no") {
                throw ScriptError("line " + std::to_string(line_no) + ": header takes yes or no, got \"" +
                                  f[1] + "\"");
            }
            script.steps.push_back(HeaderStep{f[1] == "yes"});
        } else {
            throw ScriptError("line " + std::to_string(line_no) + ": unknown step \"" + verb + "\"");
        }
    }
    if (script.steps.empty()) throw ScriptError("script has no steps");
    return script;
}

CleanupScript load_script(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open script file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_script(buffer.str());
}

namespace {

struct RunState {
    std::string text;
    std::optional<Datatable> table;
    bool has_header = false;
};

std::string describe_cell(const CellValue& cell) {
    return cell.is_text() ? "\"" + cell.as_text() + "\"" : cell.display();
}

/// Splits the accumulated text into a rectangular Datatable. Trailing empty
/// lines are ignored; raggedness anywhere else is a hard error.
Datatable tabularize(const std::string& text, bool has_header, size_t& record_count) {
    std::vector<std::string> lines = split_lines(text);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw TableError("no data lines to tabularize");

    std::vector<std::vector<std::string>> rows;
    rows.reserve(lines.size());
    for (const auto& line : lines) rows.push_back(split_fields(line));

    size_t width = rows.front().size();
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != width) {
            throw TableError("line " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " fields, expected " +
                             std::to_string(width));
        }
    }

    std::vector<std::string> header;
    size_t first_record = 0;
    if (has_header) {
        header = rows.front();
        first_record = 1;
    } else {
        for (size_t c = 1; c <= width; ++c) header.push_back("Field" + std::to_string(c));
    }

    std::vector<std::vector<std::string>> body(rows.begin() + first_record, rows.end());
    std::vector<ColumnType> types =
        body.empty() ? std::vector<ColumnType>(width, ColumnType::Number) : infer_column_types(body);

    std::vector<std::vector<CellValue>> records;
    records.reserve(body.size());
    for (const auto& row : body) {
        std::vector<CellValue> cells;
        cells.reserve(width);
        for (size_t c = 0; c < width; ++c) {
            if (row[c].empty()) {
                cells.emplace_back();
            } else if (types[c] == ColumnType::Number) {
                cells.push_back(cell_from_text(row[c]));
            } else {
                cells.emplace_back(row[c]);
            }
        }
        records.push_back(std::move(cells));
    }
    record_count = records.size();
    return Datatable(std::move(header), std::move(types), std::move(records));
}

Datatable apply_split(const Datatable& table, const SplitColumnStep& step, size_t& open_ended) {
    if (step.column < 1 || step.column > table.field_count()) {
        throw ScriptError("split column " + std::to_string(step.column) + " is out of range");
    }
    size_t col = step.column - 1;

    std::vector<std::string> header;
    std::vector<ColumnType> types;
    for (size_t c = 0; c < table.field_count(); ++c) {
        if (c == col) {
            for (const auto& name : step.spec.output_names) {
                header.push_back(name);
                types.push_back(ColumnType::Number);
            }
        } else {
            header.push_back(table.header()[c]);
            types.push_back(table.column_types()[c]);
        }
    }

    open_ended = 0;
    std::vector<std::vector<CellValue>> records;
    records.reserve(table.record_count());
    for (const auto& row : table.records()) {
        std::vector<CellValue> cells;
        cells.reserve(row.size() + 2);
        for (size_t c = 0; c < row.size(); ++c) {
            if (c != col) {
                cells.push_back(row[c]);
                continue;
            }
            if (!row[c].is_text()) {
                throw ScriptError("cell " + describe_cell(row[c]) +
                                  " does not match the composite shape");
            }
            SplitFields parts = split_composite_field(row[c].as_text());
            if (parts.open_ended) ++open_ended;
            cells.push_back(parts.value);
            cells.push_back(parts.lo);
            cells.push_back(parts.hi);
        }
        records.push_back(std::move(cells));
    }
    return Datatable(std::move(header), std::move(types), std::move(records));
}

Datatable apply_patch(const Datatable& table, const PatchStep& step) {
    if (step.row < 1 || step.row > table.record_count() || step.column < 1 ||
        step.column > table.field_count()) {
        throw ScriptError("patch (" + std::to_string(step.row) + "," + std::to_string(step.column) +
                          ") is out of range");
    }
    auto records = table.records();
    records[step.row - 1][step.column - 1] = step.value;
    return Datatable(table.header(), table.column_types(), std::move(records));
}

} // namespace

RunResult run_script(const CleanupScript& script, std::string_view input) {
    RunResult result;
    if (auto bad = utf8::first_invalid_byte(input)) {
        result.error = "input is not valid UTF-8 at byte " + std::to_string(*bad);
        return result;
    }

    RunState state;
    state.text.reserve(input.size());
    for (size_t i = 0; i < input.size(); ++i) {
        if (input[i] == '\r') {
            if (i + 1 < input.size() && input[i + 1] == '\n') continue;
            state.text.push_back('\n');
        } else {
            state.text.push_back(input[i]);
        }
    }

    auto fail = [&](const std::string& message) {
        result.error = message;
        result.table.reset();
        return result;
    };

    auto ensure_table = [&]() {
        if (state.table) return;
        size_t record_count = 0;
        state.table = tabularize(state.text, state.has_header, record_count);
        AuditEntry entry;
        entry.description = "tabularize: " + std::to_string(record_count) + " records x " +
                            std::to_string(state.table->field_count()) + " fields" +
                            (state.has_header ? " (header)" : "");
        entry.count = record_count;
        result.audit.entries.push_back(std::move(entry));
    };

    for (size_t i = 0; i < script.steps.size(); ++i) {
        const Step& step = script.steps[i];
        AuditEntry entry;
        entry.step_index = i + 1;
        try {
            if (const auto* replace = std::get_if<ReplaceStep>(&step)) {
                if (state.table) return fail("step " + std::to_string(i + 1) +
                                             ": replace after tabularization");
                ReplaceResult r = replace_all(state.text, replace->pattern, replace->replacement);
                state.text = std::move(r.text);
                entry.description =
                    "replace \"" + replace->pattern + "\" -> \"" + replace->replacement + "\"";
                entry.count = r.count;
                entry.expected = replace->expected_count;
                entry.passed = !replace->expected_count ||
                               r.count == static_cast<size_t>(*replace->expected_count);
            } else if (const auto* unify = std::get_if<UnifyStep>(&step)) {
                if (state.table) return fail("step " + std::to_string(i + 1) +
                                             ": unify after tabularization");
                UnifyResult u = unify_separators(split_lines(state.text), unify->separators);
                state.text = join_lines(u.lines);
                entry.description = "unify separators \"" + unify->separators + "\"";
                entry.count = u.replaced;
            } else if (const auto* header = std::get_if<HeaderStep>(&step)) {
                if (state.table) return fail("step " + std::to_string(i + 1) +
                                             ": header declaration after tabularization");
                state.has_header = header->has_header;
                entry.description = std::string("header ") + (header->has_header ? "yes" : "no");
            } else if (const auto* split = std::get_if<SplitColumnStep>(&step)) {
                ensure_table();
                size_t open_ended = 0;
                state.table = apply_split(*state.table, *split, open_ended);
                entry.description = "split column " + std::to_string(split->column) + " -> " +
                                    split->spec.output_names[0] + "|" + split->spec.output_names[1] +
                                    "|" + split->spec.output_names[2] +
                                    (open_ended ? " (" + std::to_string(open_ended) + " open-ended)" : "");
                entry.count = state.table->record_count();
            } else if (const auto* drop = std::get_if<DropColumnStep>(&step)) {
                ensure_table();
                state.table = drop_column(*state.table, drop->name);
                entry.description = "drop column \"" + drop->name + "\"";
                entry.count = state.table->record_count();
            } else if (const auto* patch = std::get_if<PatchStep>(&step)) {
                ensure_table();
                state.table = apply_patch(*state.table, *patch);
                entry.description = "patch (" + std::to_string(patch->row) + "," +
                                    std::to_string(patch->column) + ") = " + describe_cell(patch->value);
                entry.count = 1;
            }
        } catch (const std::exception& e) {
            return fail("step " + std::to_string(i + 1) + ": " + e.what());
        }
        result.audit.entries.push_back(std::move(entry));
    }

    try {
        ensure_table();
    } catch (const std::exception& e) {
        return fail(e.what());
    }

    result.table = std::move(state.table);
    return result;
}

} // namespace tabkit
