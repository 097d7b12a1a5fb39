#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tabkit/lookup.hpp"
#include "tabkit/table.hpp"

namespace tabkit {

/// A1-style cell address; col 0-based (A = 0), row 1-based.
struct CellRef {
    int col = 0;
    int row = 1;

    bool operator==(const CellRef&) const = default;
    std::string to_string() const;
};

/// "F3" -> CellRef. Column letters A-Z and AA-ZZ, case-insensitive.
std::optional<CellRef> parse_cell_ref(std::string_view text);

/// Rectangular range, normalized so start.col <= end.col and
/// start.row <= end.row. Formula vectors are single-column or single-row.
struct RangeRef {
    CellRef start;
    CellRef end;

    RangeRef() = default;
    RangeRef(CellRef a, CellRef b);

    bool is_vector() const { return start.col == end.col || start.row == end.row; }
    bool operator==(const RangeRef&) const = default;
    std::string to_string() const;
};

/// Sparse grid of values. No formula storage: formulas are evaluated on
/// demand against the current snapshot.
class Sheet {
public:
    void set(CellRef ref, CellValue value);
    CellValue get(CellRef ref) const;

    /// Writes the table at anchor, header row first when requested.
    /// Overlapping any existing non-empty cell is a Ref error and leaves
    /// the sheet untouched.
    std::optional<LookupError> bind_table(const Datatable& table, CellRef anchor, bool with_header);

    /// Cells of a single-column or single-row range, in grid order.
    std::vector<CellValue> read_vector(const RangeRef& range) const;

private:
    std::map<std::pair<int, int>, CellValue> cells_;
};

enum class Function { Index, Match, Left, Right, Len, Upper };
enum class BinaryOp { Concat, Add, Sub };

struct FormulaAst;

struct NumberLit {
    double value = 0;
};
struct StringLit {
    std::string value;
};
struct RefNode {
    CellRef ref;
};
struct RangeNode {
    RangeRef range;
};
struct CallNode {
    Function fn = Function::Index;
    std::vector<FormulaAst> args;
};
struct BinaryNode {
    BinaryOp op = BinaryOp::Concat;
    std::unique_ptr<FormulaAst> left;
    std::unique_ptr<FormulaAst> right;
};

struct FormulaAst {
    std::variant<NumberLit, StringLit, RefNode, RangeNode, CallNode, BinaryNode> node;
};

/// Formula syntax error: byte offset into the formula text plus what the
/// parser expected there.
class FormulaParseError : public std::runtime_error {
public:
    FormulaParseError(size_t offset, const std::string& expected)
        : std::runtime_error("offset " + std::to_string(offset) + ": expected " + expected),
          offset_(offset),
          expected_(expected) {}

    size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    size_t offset_;
    std::string expected_;
};

/// Parses "=..." per the grammar: concat ('&') over additive ('+'/'-') over
/// primaries (number, "string" with doubled-quote escape, cell ref, range,
/// call, parenthesized expr). Function names are case-insensitive; arity is
/// checked here. Throws FormulaParseError.
FormulaAst parse_formula(std::string_view text);

/// Canonical text: uppercase names and refs, no spaces, minimal parentheses.
/// print_formula(parse_formula(f)) reparses to the same AST.
std::string print_formula(const FormulaAst& ast);

/// Evaluates against the sheet snapshot. Spreadsheet error values (NA,
/// Value, Ref) travel as the Outcome error; the leftmost-innermost error
/// wins. Referenced-but-unset cells read as Empty.
Outcome<CellValue> evaluate(const FormulaAst& ast, const Sheet& sheet);

/// parse + evaluate in one call.
Outcome<CellValue> evaluate_formula(std::string_view text, const Sheet& sheet);

} // namespace tabkit
