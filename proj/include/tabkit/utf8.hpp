#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tabkit::utf8 {

struct Decoded {
    char32_t scalar;
    size_t length; // bytes consumed, >= 1
};

/// Decodes the scalar starting at byte `pos`. An invalid byte sequence is
/// treated as a single opaque one-byte scalar so malformed input passes
/// through unchanged.
Decoded decode(std::string_view text, size_t pos);

std::string encode(char32_t scalar);

/// Byte offset of the first invalid UTF-8 sequence, if any.
std::optional<size_t> first_invalid_byte(std::string_view text);

/// Number of Unicode scalar values in the string.
size_t scalar_count(std::string_view text);

/// First `count` scalars (whole string if it is shorter).
std::string_view prefix_scalars(std::string_view text, size_t count);

/// Last `count` scalars (whole string if it is shorter).
std::string_view suffix_scalars(std::string_view text, size_t count);

/// Simple one-to-one uppercase mapping over Basic Latin, Latin-1
/// Supplement, and Latin Extended-A; everything else is unchanged.
char32_t to_upper(char32_t scalar);
char32_t to_lower(char32_t scalar);

std::string upper(std::string_view text);

/// Case-insensitive equality under the simple mapping above.
bool equal_fold(std::string_view a, std::string_view b);

} // namespace tabkit::utf8
