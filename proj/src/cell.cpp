#include "tabkit/cell.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace tabkit {

std::string to_string(ColumnType type) {
    return type == ColumnType::Number ? "number" : "text";
}

std::optional<ColumnType> column_type_from_string(std::string_view s) {
    if (s == "number") return ColumnType::Number;
    if (s == "text") return ColumnType::Text;
    return std::nullopt;
}

CellValue::CellValue(double number) : value_(number) {
    if (!std::isfinite(number)) {
        throw std::invalid_argument("cell numbers must be finite");
    }
}

std::string CellValue::display() const {
    if (is_number()) return format_number(as_number());
    if (is_text()) return as_text();
    return "";
}

std::string format_number(double value) {
    if (value == 0.0) return "0"; // normalizes -0
    double rounded = std::nearbyint(value);
    if (rounded == value && std::fabs(value) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        return buf;
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

namespace {

// ^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$
bool looks_like_number(std::string_view s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t int_digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++int_digits; }
    size_t frac_digits = 0;
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++frac_digits; }
    }
    if (int_digits == 0 && frac_digits == 0) return false;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        size_t exp_digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++exp_digits; }
        if (exp_digits == 0) return false;
    }
    return i == s.size();
}

} // namespace

std::optional<double> parse_number(std::string_view text) {
    if (!looks_like_number(text)) return std::nullopt;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1); // from_chars rejects '+'
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

CellValue cell_from_text(std::string_view text) {
    if (text.empty()) return CellValue();
    if (auto n = parse_number(text)) return CellValue(*n);
    return CellValue(std::string(text));
}

} // namespace tabkit
