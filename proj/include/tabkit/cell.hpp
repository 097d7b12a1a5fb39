#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace tabkit {

enum class ColumnType { Number, Text };

std::string to_string(ColumnType type);
std::optional<ColumnType> column_type_from_string(std::string_view s);

/// A single table cell: a finite number, a UTF-8 string, or empty.
class CellValue {
public:
    CellValue() = default;
    CellValue(double number);
    CellValue(std::string text) : value_(std::move(text)) {}
    CellValue(std::string_view text) : value_(std::string(text)) {}
    CellValue(const char* text) : value_(std::string(text)) {}

    bool is_empty() const { return std::holds_alternative<std::monostate>(value_); }
    bool is_number() const { return std::holds_alternative<double>(value_); }
    bool is_text() const { return std::holds_alternative<std::string>(value_); }

    double as_number() const { return std::get<double>(value_); }
    const std::string& as_text() const { return std::get<std::string>(value_); }

    /// Number -> canonical decimal text, Text -> itself, Empty -> "".
    std::string display() const;

    bool operator==(const CellValue& other) const { return value_ == other.value_; }
    bool operator!=(const CellValue& other) const { return !(*this == other); }

private:
    std::variant<std::monostate, double, std::string> value_;
};

/// Shortest round-trip decimal text; integral values print without a
/// decimal point (6 -> "6", not "6.0").
std::string format_number(double value);

/// Strict locale-independent parse: optional sign, digits with '.'
/// fraction, optional exponent. Whole string must match; non-finite
/// results are rejected.
std::optional<double> parse_number(std::string_view text);

/// Number if it parses, Empty if blank, Text otherwise.
CellValue cell_from_text(std::string_view text);

} // namespace tabkit
