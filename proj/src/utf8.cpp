#include "tabkit/utf8.hpp"

namespace tabkit::utf8 {

namespace {

bool is_continuation(unsigned char b) {
    return (b & 0xC0) == 0x80;
}

struct DecodedEx {
    char32_t scalar;
    size_t length;
    bool valid;
};

DecodedEx decode_ex(std::string_view text, size_t pos) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
    unsigned char b0 = bytes[pos];
    size_t remaining = text.size() - pos;
    if (b0 < 0x80) return {b0, 1, true};
    auto invalid = [&]() -> DecodedEx { return {b0, 1, false}; };
    if (b0 >= 0xC2 && b0 <= 0xDF) {
        if (remaining < 2 || !is_continuation(bytes[pos + 1])) return invalid();
        char32_t s = (char32_t(b0 & 0x1F) << 6) | (bytes[pos + 1] & 0x3F);
        return {s, 2, true};
    }
    if (b0 >= 0xE0 && b0 <= 0xEF) {
        if (remaining < 3 || !is_continuation(bytes[pos + 1]) || !is_continuation(bytes[pos + 2])) {
            return invalid();
        }
        unsigned char b1 = bytes[pos + 1];
        if (b0 == 0xE0 && b1 < 0xA0) return invalid();      // overlong
        if (b0 == 0xED && b1 > 0x9F) return invalid();      // surrogates
        char32_t s = (char32_t(b0 & 0x0F) << 12) | (char32_t(b1 & 0x3F) << 6) | (bytes[pos + 2] & 0x3F);
        return {s, 3, true};
    }
    if (b0 >= 0xF0 && b0 <= 0xF4) {
        if (remaining < 4 || !is_continuation(bytes[pos + 1]) || !is_continuation(bytes[pos + 2]) ||
            !is_continuation(bytes[pos + 3])) {
            return invalid();
        }
        unsigned char b1 = bytes[pos + 1];
        if (b0 == 0xF0 && b1 < 0x90) return invalid();
        if (b0 == 0xF4 && b1 > 0x8F) return invalid();
        char32_t s = (char32_t(b0 & 0x07) << 18) | (char32_t(b1 & 0x3F) << 12) |
                     (char32_t(bytes[pos + 2] & 0x3F) << 6) | (bytes[pos + 3] & 0x3F);
        return {s, 4, true};
    }
    return invalid();
}

} // namespace

Decoded decode(std::string_view text, size_t pos) {
    auto d = decode_ex(text, pos);
    return {d.scalar, d.length};
}

std::optional<size_t> first_invalid_byte(std::string_view text) {
    size_t pos = 0;
    while (pos < text.size()) {
        auto d = decode_ex(text, pos);
        if (!d.valid) return pos;
        pos += d.length;
    }
    return std::nullopt;
}

std::string encode(char32_t s) {
    std::string out;
    if (s < 0x80) {
        out.push_back(char(s));
    } else if (s < 0x800) {
        out.push_back(char(0xC0 | (s >> 6)));
        out.push_back(char(0x80 | (s & 0x3F)));
    } else if (s < 0x10000) {
        out.push_back(char(0xE0 | (s >> 12)));
        out.push_back(char(0x80 | ((s >> 6) & 0x3F)));
        out.push_back(char(0x80 | (s & 0x3F)));
    } else {
        out.push_back(char(0xF0 | (s >> 18)));
        out.push_back(char(0x80 | ((s >> 12) & 0x3F)));
        out.push_back(char(0x80 | ((s >> 6) & 0x3F)));
        out.push_back(char(0x80 | (s & 0x3F)));
    }
    return out;
}

size_t scalar_count(std::string_view text) {
    size_t count = 0;
    for (size_t i = 0; i < text.size(); i += decode_ex(text, i).length) ++count;
    return count;
}

std::string_view prefix_scalars(std::string_view text, size_t count) {
    size_t i = 0;
    while (i < text.size() && count > 0) {
        i += decode_ex(text, i).length;
        --count;
    }
    return text.substr(0, i);
}

std::string_view suffix_scalars(std::string_view text, size_t count) {
    size_t total = scalar_count(text);
    if (count >= total) return text;
    size_t skip = total - count;
    size_t i = 0;
    while (skip > 0) {
        i += decode_ex(text, i).length;
        --skip;
    }
    return text.substr(i);
}

char32_t to_upper(char32_t s) {
    if (s >= 'a' && s <= 'z') return s - 0x20;
    if (s >= 0xE0 && s <= 0xFE && s != 0xF7) return s - 0x20; // Latin-1, skip division sign
    if (s == 0xFF) return 0x178;                              // y with diaeresis
    if (s == 0x131) return 'I';                               // dotless i
    if (s == 0x138 || s == 0x149 || s == 0xDF) return s;      // kra, 'n, sharp s: no pair
    if (s == 0x17F) return 'S';                               // long s
    // Latin Extended-A upper/lower pairs
    if (s >= 0x100 && s <= 0x137 && (s % 2) == 1) return s - 1;
    if (s >= 0x139 && s <= 0x148 && (s % 2) == 0) return s - 1;
    if (s >= 0x14A && s <= 0x177 && (s % 2) == 1) return s - 1;
    if (s >= 0x179 && s <= 0x17E && (s % 2) == 0) return s - 1;
    return s;
}

char32_t to_lower(char32_t s) {
    if (s >= 'A' && s <= 'Z') return s + 0x20;
    if (s >= 0xC0 && s <= 0xDE && s != 0xD7) return s + 0x20; // Latin-1, skip multiplication sign
    if (s == 0x178) return 0xFF;
    if (s == 0x130) return 'i'; // capital I with dot
    if (s >= 0x100 && s <= 0x137 && (s % 2) == 0) return s + 1;
    if (s >= 0x139 && s <= 0x148 && (s % 2) == 1) return s + 1;
    if (s >= 0x14A && s <= 0x177 && (s % 2) == 0) return s + 1;
    if (s >= 0x179 && s <= 0x17E && (s % 2) == 1) return s + 1;
    return s;
}

std::string upper(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size();) {
        auto d = decode_ex(text, i);
        if (d.valid) {
            out += encode(to_upper(d.scalar));
        } else {
            out.append(text.substr(i, d.length)); // malformed bytes pass through
        }
        i += d.length;
    }
    return out;
}

bool equal_fold(std::string_view a, std::string_view b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        auto da = decode_ex(a, i);
        auto db = decode_ex(b, j);
        if (da.valid != db.valid) return false;
        if (da.valid) {
            if (to_upper(da.scalar) != to_upper(db.scalar)) return false;
        } else {
            if (a[i] != b[j]) return false;
        }
        i += da.length;
        j += db.length;
    }
    return i == a.size() && j == b.size();
}

} // namespace tabkit::utf8
