#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "tabkit/cell.hpp"

namespace tabkit {

enum class MatchType { Exact = 0, AscendingLargestLeq = 1 };
enum class SelectionMode { Positional, ByValue };
enum class QueryKind { ExactMembership, Banded };

enum class ErrorKind { Na, Value, Ref };

/// Spreadsheet-style error value: #N/A, #VALUE! or #REF!.
struct LookupError {
    ErrorKind kind = ErrorKind::Na;
    std::string offending; ///< input that triggered the error, for diagnostics

    std::string display() const;
    bool operator==(const LookupError& other) const { return kind == other.kind; }
};

/// Success-or-error carrier; search errors travel as values, not exceptions.
template <typename T>
class Outcome {
public:
    Outcome(T value) : state_(std::move(value)) {}
    Outcome(LookupError error) : state_(std::move(error)) {}

    bool ok() const { return std::holds_alternative<T>(state_); }
    const T& value() const { return std::get<T>(state_); }
    const LookupError& error() const { return std::get<LookupError>(state_); }

    bool operator==(const Outcome& other) const = default;

private:
    std::variant<T, LookupError> state_;
};

/// First index in [0, n) whose element compares greater than value, assuming
/// item(i) is non-decreasing in i. O(log n) probes; tests instrument `item`
/// to count them.
template <typename Access>
size_t upper_bound_index(size_t n, double value, Access item) {
    size_t lo = 0;
    size_t hi = n;
    while (lo < hi) {
        size_t mid = lo + (hi - lo) / 2;
        if (item(mid) <= value) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return lo;
}

/// Linear search for the first element equal to value; 1-based position.
/// Numbers compare numerically, text case-insensitively. No match: NA.
Outcome<size_t> match_exact(const CellValue& value, const std::vector<CellValue>& data);

/// Binary search for the largest element <= value on an ascending numeric
/// vector; 1-based position of the largest qualifying index. value below the
/// first element: NA. Non-numeric or unsorted data: Value.
Outcome<size_t> match_ascending(const CellValue& value, const std::vector<CellValue>& data);

Outcome<size_t> match(const CellValue& value, const std::vector<CellValue>& data, MatchType mtype);

/// 1-based element access. Out of range: Ref; fractional position: Value.
Outcome<CellValue> index(const std::vector<CellValue>& data, double position);

/// index(result, match(lookup, search, mtype)); vectors of unequal length: Ref.
Outcome<CellValue> index_match(const CellValue& lookup, const std::vector<CellValue>& search,
                               const std::vector<CellValue>& result, MatchType mtype);

/// Picks the match algorithm a query needs. Banded queries demand ascending
/// numeric data; on anything else the caller must sort first (Value).
Outcome<MatchType> choose_algorithm(const std::vector<CellValue>& data, QueryKind kind);

/// Drop-down selection. Positional returns the 1-based choice itself (the
/// linked-cell integer); ByValue returns items[choice]. Out of range: Ref.
Outcome<CellValue> select(const std::vector<CellValue>& items, SelectionMode mode, long choice);

} // namespace tabkit
