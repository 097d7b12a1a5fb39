#include "tabkit/lookup.hpp"

#include <cmath>

#include "tabkit/utf8.hpp"

namespace tabkit {

std::string LookupError::display() const {
    switch (kind) {
    case ErrorKind::Na: return "#N/A";
    case ErrorKind::Value: return "#VALUE!";
    case ErrorKind::Ref: return "#REF!";
    }
    return "#VALUE!";
}

namespace {

bool cells_equal(const CellValue& lhs, const CellValue& rhs) {
    if (lhs.is_number() && rhs.is_number()) return lhs.as_number() == rhs.as_number();
    if (lhs.is_text() && rhs.is_text()) return utf8::equal_fold(lhs.as_text(), rhs.as_text());
    return false;
}

/// Single pass: every element numeric and non-decreasing.
bool is_ascending_numeric(const std::vector<CellValue>& data) {
    for (size_t i = 0; i < data.size(); ++i) {
        if (!data[i].is_number()) return false;
        if (i > 0 && data[i - 1].as_number() > data[i].as_number()) return false;
    }
    return true;
}

} // namespace

Outcome<size_t> match_exact(const CellValue& value, const std::vector<CellValue>& data) {
    if (value.is_empty()) return LookupError{ErrorKind::Value, "empty lookup value"};
    for (size_t i = 0; i < data.size(); ++i) {
        if (cells_equal(value, data[i])) return i + 1;
    }
    return LookupError{ErrorKind::Na, value.display()};
}

Outcome<size_t> match_ascending(const CellValue& value, const std::vector<CellValue>& data) {
    if (!value.is_number()) return LookupError{ErrorKind::Value, value.display()};
    if (!is_ascending_numeric(data)) {
        return LookupError{ErrorKind::Value, "vector is not ascending numeric"};
    }
    size_t ub = upper_bound_index(data.size(), value.as_number(),
                                  [&](size_t i) { return data[i].as_number(); });
    if (ub == 0) return LookupError{ErrorKind::Na, value.display()};
    return ub;
}

Outcome<size_t> match(const CellValue& value, const std::vector<CellValue>& data, MatchType mtype) {
    return mtype == MatchType::Exact ? match_exact(value, data) : match_ascending(value, data);
}

Outcome<CellValue> index(const std::vector<CellValue>& data, double position) {
    if (!std::isfinite(position) || position != std::floor(position)) {
        return LookupError{ErrorKind::Value, format_number(position)};
    }
    if (position < 1 || position > static_cast<double>(data.size())) {
        return LookupError{ErrorKind::Ref, format_number(position)};
    }
    return data[static_cast<size_t>(position) - 1];
}

Outcome<CellValue> index_match(const CellValue& lookup, const std::vector<CellValue>& search,
                               const std::vector<CellValue>& result, MatchType mtype) {
    if (search.size() != result.size()) {
        return LookupError{ErrorKind::Ref, "vector lengths differ"};
    }
    Outcome<size_t> position = match(lookup, search, mtype);
    if (!position.ok()) return position.error();
    return index(result, static_cast<double>(position.value()));
}

Outcome<MatchType> choose_algorithm(const std::vector<CellValue>& data, QueryKind kind) {
    if (kind == QueryKind::ExactMembership) return MatchType::Exact;
    if (!is_ascending_numeric(data)) {
        return LookupError{ErrorKind::Value, "banded query needs ascending numeric data"};
    }
    return MatchType::AscendingLargestLeq;
}

Outcome<CellValue> select(const std::vector<CellValue>& items, SelectionMode mode, long choice) {
    if (choice < 1 || static_cast<size_t>(choice) > items.size()) {
        return LookupError{ErrorKind::Ref, std::to_string(choice)};
    }
    if (mode == SelectionMode::Positional) return CellValue(static_cast<double>(choice));
    return items[static_cast<size_t>(choice) - 1];
}

} // namespace tabkit
