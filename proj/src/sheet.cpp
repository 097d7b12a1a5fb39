#include "tabkit/sheet.hpp"

#include <algorithm>
#include <cctype>

namespace tabkit {

std::string CellRef::to_string() const {
    std::string out;
    if (col >= 26) out.push_back(char('A' + col / 26 - 1));
    out.push_back(char('A' + col % 26));
    out += std::to_string(row);
    return out;
}

std::optional<CellRef> parse_cell_ref(std::string_view text) {
    size_t i = 0;
    int col = 0;
    size_t letters = 0;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
        col = col * 26 + (std::toupper(static_cast<unsigned char>(text[i])) - 'A' + 1);
        ++letters;
        ++i;
    }
    if (letters == 0 || letters > 2) return std::nullopt;
    size_t digits = 0;
    long row = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        row = row * 10 + (text[i] - '0');
        if (row > 1000000) return std::nullopt;
        ++digits;
        ++i;
    }
    if (digits == 0 || row < 1 || i != text.size()) return std::nullopt;
    return CellRef{col - 1, static_cast<int>(row)};
}

RangeRef::RangeRef(CellRef a, CellRef b) {
    start = {std::min(a.col, b.col), std::min(a.row, b.row)};
    end = {std::max(a.col, b.col), std::max(a.row, b.row)};
}

std::string RangeRef::to_string() const {
    return start.to_string() + ":" + end.to_string();
}

void Sheet::set(CellRef ref, CellValue value) {
    if (value.is_empty()) {
        cells_.erase({ref.col, ref.row});
    } else {
        cells_[{ref.col, ref.row}] = std::move(value);
    }
}

CellValue Sheet::get(CellRef ref) const {
    auto it = cells_.find({ref.col, ref.row});
    return it == cells_.end() ? CellValue() : it->second;
}

std::optional<LookupError> Sheet::bind_table(const Datatable& table, CellRef anchor,
                                             bool with_header) {
    int rows = static_cast<int>(table.record_count()) + (with_header ? 1 : 0);
    int cols = static_cast<int>(table.field_count());
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            CellRef ref{anchor.col + c, anchor.row + r};
            if (!get(ref).is_empty()) {
                return LookupError{ErrorKind::Ref, "bind overlaps " + ref.to_string()};
            }
        }
    }
    int row = anchor.row;
    if (with_header) {
        for (int c = 0; c < cols; ++c) {
            set({anchor.col + c, row}, CellValue(table.header()[c]));
        }
        ++row;
    }
    for (const auto& record : table.records()) {
        for (int c = 0; c < cols && c < static_cast<int>(record.size()); ++c) {
            set({anchor.col + c, row}, record[c]);
        }
        ++row;
    }
    return std::nullopt;
}

std::vector<CellValue> Sheet::read_vector(const RangeRef& range) const {
    std::vector<CellValue> out;
    for (int r = range.start.row; r <= range.end.row; ++r) {
        for (int c = range.start.col; c <= range.end.col; ++c) {
            out.push_back(get({c, r}));
        }
    }
    return out;
}

} // namespace tabkit
