#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabkit/cell.hpp"
#include "tabkit/errors.hpp"

namespace tabkit {

/// Rectangular first-normal-form datatable: one header row of field names,
/// one declared type per column, records in row-major order. Immutable
/// after construction. Construction tolerates malformed records (ragged
/// rows, type mismatches); validate_1nf reports them.
class Datatable {
public:
    Datatable(std::vector<std::string> header,
              std::vector<ColumnType> column_types,
              std::vector<std::vector<CellValue>> records);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<ColumnType>& column_types() const { return column_types_; }
    const std::vector<std::vector<CellValue>>& records() const { return records_; }

    size_t field_count() const { return header_.size(); }
    size_t record_count() const { return records_.size(); }

    /// Cell at 0-based (row, column). pre: in range for a rectangular table.
    /// Cells past a short (malformed) record read as Empty.
    const CellValue& cell(size_t row, size_t column) const {
        static const CellValue kEmpty;
        const auto& record = records_[row];
        return column < record.size() ? record[column] : kEmpty;
    }

    std::optional<size_t> find_column(std::string_view name) const;
    /// Like find_column but throws TableError when the field is unknown.
    size_t column_index(std::string_view name) const;

    bool operator==(const Datatable& other) const;
    bool operator!=(const Datatable& other) const { return !(*this == other); }

private:
    std::vector<std::string> header_;
    std::vector<ColumnType> column_types_;
    std::vector<std::vector<CellValue>> records_;
};

struct Violation {
    size_t row;    // 1-based record index, 0 for table-level findings
    size_t column; // 1-based column index, 0 when not column-specific
    std::string reason;

    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    bool is_1nf = false;
    std::vector<Violation> violations;
    std::vector<Violation> warnings; // advisory only, e.g. empty cell in a number column
    size_t record_count = 0;
    size_t field_count = 0;
};

/// Checks rectangularity, header sanity, column typing, and cell atomicity
/// (a text cell shaped like "8 (55-65)" packs three values into one field
/// and is flagged as non-atomic). Always returns a report; is_1nf is true
/// iff no violations were found.
ValidationReport validate_1nf(const Datatable& table);

/// A column is Number iff every non-empty cell parses as a decimal number
/// ('.' separator); otherwise Text. Rows must be rectangular.
std::vector<ColumnType> infer_column_types(const std::vector<std::vector<std::string>>& rows);

/// Returns a copy without the named column; record order preserved.
Datatable drop_column(const Datatable& table, std::string_view name);

/// The named column's cells in record order.
std::vector<CellValue> column_vector(const Datatable& table, std::string_view name);

/// Parts of a non-atomic cell shaped like "<value> (<lo>[-<hi>][ <]?)",
/// e.g. "8 (55-65)" or "12 (105 <)".
struct CompositeParts {
    double value = 0;
    double lo = 0;
    std::optional<double> hi;
    bool open_ended = false;
};

/// Matches a composite cell, or nullopt if the text is atomic.
std::optional<CompositeParts> parse_composite(std::string_view cell);

} // namespace tabkit
