#include "tabkit/table.hpp"

#include <algorithm>
#include <unordered_set>

namespace tabkit {

Datatable::Datatable(std::vector<std::string> header,
                     std::vector<ColumnType> column_types,
                     std::vector<std::vector<CellValue>> records)
    : header_(std::move(header)),
      column_types_(std::move(column_types)),
      records_(std::move(records)) {
    if (header_.size() != column_types_.size()) {
        throw TableError("header has " + std::to_string(header_.size()) + " fields but " +
                         std::to_string(column_types_.size()) + " column types were given");
    }
}

std::optional<size_t> Datatable::find_column(std::string_view name) const {
    for (size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) return i;
    }
    return std::nullopt;
}

size_t Datatable::column_index(std::string_view name) const {
    if (auto i = find_column(name)) return *i;
    throw TableError("no such field: \"" + std::string(name) + "\"");
}

bool Datatable::operator==(const Datatable& other) const {
    return header_ == other.header_ && column_types_ == other.column_types_ &&
           records_ == other.records_;
}

ValidationReport validate_1nf(const Datatable& table) {
    ValidationReport report;
    report.record_count = table.record_count();
    report.field_count = table.field_count();

    std::unordered_set<std::string_view> seen;
    for (size_t c = 0; c < table.header().size(); ++c) {
        const std::string& name = table.header()[c];
        if (name.empty()) {
            report.violations.push_back({0, c + 1, "field name is empty"});
        } else if (!seen.insert(name).second) {
            report.violations.push_back({0, c + 1, "duplicate field name \"" + name + "\""});
        }
    }

    for (size_t r = 0; r < table.record_count(); ++r) {
        const auto& row = table.records()[r];
        if (row.size() != table.field_count()) {
            report.violations.push_back(
                {r + 1, 0,
                 "record has " + std::to_string(row.size()) + " cells, expected " +
                     std::to_string(table.field_count())});
        }
        size_t cols = std::min(row.size(), table.field_count());
        for (size_t c = 0; c < cols; ++c) {
            const CellValue& cell = row[c];
            if (cell.is_text() && parse_composite(cell.as_text())) {
                report.violations.push_back(
                    {r + 1, c + 1, "non-atomic cell \"" + cell.as_text() + "\" packs several values"});
                continue;
            }
            if (table.column_types()[c] == ColumnType::Number) {
                if (cell.is_text()) {
                    report.violations.push_back(
                        {r + 1, c + 1, "expected a number, found \"" + cell.as_text() + "\""});
                } else if (cell.is_empty()) {
                    report.warnings.push_back({r + 1, c + 1, "empty cell in a number column"});
                }
            } else if (cell.is_number()) {
                report.violations.push_back(
                    {r + 1, c + 1, "expected text, found number " + cell.display()});
            }
        }
    }

    report.is_1nf = report.violations.empty();
    return report;
}

std::vector<ColumnType> infer_column_types(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return {};
    size_t width = rows.front().size();
    for (size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != width) {
            throw TableError("ragged rows: row " + std::to_string(r + 1) + " has " +
                             std::to_string(rows[r].size()) + " cells, expected " +
                             std::to_string(width));
        }
    }
    std::vector<ColumnType> types(width, ColumnType::Number);
    for (size_t c = 0; c < width; ++c) {
        for (const auto& row : rows) {
            const std::string& cell = row[c];
            if (!cell.empty() && !parse_number(cell)) {
                types[c] = ColumnType::Text;
                break;
            }
        }
    }
    return types;
}

Datatable drop_column(const Datatable& table, std::string_view name) {
    size_t drop = table.column_index(name);
    std::vector<std::string> header;
    std::vector<ColumnType> types;
    for (size_t c = 0; c < table.field_count(); ++c) {
        if (c == drop) continue;
        header.push_back(table.header()[c]);
        types.push_back(table.column_types()[c]);
    }
    std::vector<std::vector<CellValue>> records;
    records.reserve(table.record_count());
    for (const auto& row : table.records()) {
        std::vector<CellValue> out;
        out.reserve(row.empty() ? 0 : row.size() - 1);
        for (size_t c = 0; c < row.size(); ++c) {
            if (c != drop) out.push_back(row[c]);
        }
        records.push_back(std::move(out));
    }
    return Datatable(std::move(header), std::move(types), std::move(records));
}

std::vector<CellValue> column_vector(const Datatable& table, std::string_view name) {
    size_t col = table.column_index(name);
    std::vector<CellValue> out;
    out.reserve(table.record_count());
    for (const auto& row : table.records()) {
        out.push_back(col < row.size() ? row[col] : CellValue());
    }
    return out;
}

namespace {

void skip_spaces(std::string_view s, size_t& i) {
    while (i < s.size() && s[i] == ' ') ++i;
}

std::optional<double> scan_int(std::string_view s, size_t& i) {
    size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == start) return std::nullopt;
    return parse_number(s.substr(start, i - start));
}

} // namespace

// Matches "<int> (<int>[-<int>][ <]?)" with optional spaces, e.g.
// "8 (55-65)", "0 (0)", "12 (105 <)".
std::optional<CompositeParts> parse_composite(std::string_view cell) {
    size_t i = 0;
    skip_spaces(cell, i);
    auto value = scan_int(cell, i);
    if (!value) return std::nullopt;
    skip_spaces(cell, i);
    if (i >= cell.size() || cell[i] != '(') return std::nullopt;
    ++i;
    skip_spaces(cell, i);
    auto lo = scan_int(cell, i);
    if (!lo) return std::nullopt;
    skip_spaces(cell, i);
    std::optional<double> hi;
    if (i < cell.size() && cell[i] == '-') {
        ++i;
        skip_spaces(cell, i);
        hi = scan_int(cell, i);
        if (!hi) return std::nullopt;
        skip_spaces(cell, i);
    }
    bool open_ended = false;
    if (i < cell.size() && cell[i] == '<') {
        open_ended = true;
        ++i;
        skip_spaces(cell, i);
    }
    if (i >= cell.size() || cell[i] != ')') return std::nullopt;
    ++i;
    skip_spaces(cell, i);
    if (i != cell.size()) return std::nullopt;
    return CompositeParts{*value, *lo, hi, open_ended};
}

} // namespace tabkit
