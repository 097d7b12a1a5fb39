#include "doctest.h"

#include "tabkit/utf8.hpp"

#include <string>

using namespace tabkit::utf8;

TEST_SUITE("utf8") {

TEST_CASE("scalar_count counts scalars, not bytes") {
    CHECK(scalar_count("") == 0);
    CHECK(scalar_count("gale") == 4);
    CHECK(scalar_count("sz\xc3\xa9l") == 4);         // szél
    CHECK(scalar_count("\xe2\x82\xac") == 1);        // €
    CHECK(scalar_count("\xf0\x9f\x8c\xac") == 1);    // wind face
}

TEST_CASE("prefix and suffix take whole scalars") {
    std::string s = "sz\xc3\xa9l"; // szél
    CHECK(prefix_scalars(s, 1) == "s");
    CHECK(prefix_scalars(s, 3) == "sz\xc3\xa9");
    CHECK(prefix_scalars(s, 99) == s);
    CHECK(suffix_scalars(s, 1) == "l");
    CHECK(suffix_scalars(s, 2) == "\xc3\xa9l");
    CHECK(suffix_scalars(s, 99) == s);
    CHECK(prefix_scalars(s, 0).empty());
}

TEST_CASE("upper maps latin blocks and leaves the rest") {
    CHECK(upper("gale") == "GALE");
    CHECK(upper("Gale!") == "GALE!");
    CHECK(upper("sz\xc3\xa9lvihar") == "SZ\xc3\x89LVIHAR");    // szélvihar -> SZÉLVIHAR
    CHECK(upper("org\xc3\xa1n") == "ORG\xc3\x81N");            // orgán
    CHECK(upper("\xc5\x91") == "\xc5\x90");                    // ő -> Ő (Latin Extended-A)
    CHECK(upper("\xc3\xbf") == "\xc5\xb8");                    // ÿ -> Ÿ
    CHECK(upper("\xc3\x9f") == "\xc3\x9f");                    // ß unchanged (1:1 mapping only)
    CHECK(upper("\xe2\x82\xac") == "\xe2\x82\xac");            // € unchanged
}

TEST_CASE("to_lower inverts to_upper on the mapped blocks") {
    for (char32_t c = 0; c < 0x180; ++c) {
        if (c == 0x131 || c == 0x17F) continue; // dotless i and long s uppercase into ASCII
        char32_t up = to_upper(c);
        if (up != c) CHECK(to_lower(up) == c);
    }
    CHECK(to_lower(U'I') == U'i');
    CHECK(to_lower(0x150) == 0x151); // Ő -> ő
}

TEST_CASE("equal_fold is case-insensitive") {
    CHECK(equal_fold("gale", "GALE"));
    CHECK(equal_fold("Strong Breeze", "strong breeze"));
    CHECK(equal_fold("sz\xc3\xa9l", "SZ\xc3\x89L"));
    CHECK_FALSE(equal_fold("gale", "gales"));
    CHECK_FALSE(equal_fold("gale", "galf"));
    CHECK(equal_fold("", ""));
}

TEST_CASE("first_invalid_byte finds malformed sequences") {
    CHECK_FALSE(first_invalid_byte("plain ascii").has_value());
    CHECK_FALSE(first_invalid_byte("sz\xc3\xa9l").has_value());
    CHECK(first_invalid_byte("\xff") == size_t{0});
    CHECK(first_invalid_byte("ok\xc3") == size_t{2});          // truncated sequence
    CHECK(first_invalid_byte("a\xc0\xafz") == size_t{1});      // overlong encoding
    CHECK(first_invalid_byte("a\xed\xa0\x80z") == size_t{1});  // surrogate
}

TEST_CASE("decode treats bad bytes as opaque single scalars") {
    auto d = decode("\xffX", 0);
    CHECK(d.length == 1);
    CHECK(decode("X", 0).scalar == U'X');
    CHECK(decode("\xc3\xa9", 0).length == 2);
}

TEST_CASE("encode round-trips decode") {
    for (char32_t c : {char32_t{0x24}, char32_t{0xE9}, char32_t{0x150},
                       char32_t{0x20AC}, char32_t{0x1F32C}}) {
        std::string bytes = encode(c);
        auto d = decode(bytes, 0);
        CHECK(d.scalar == c);
        CHECK(d.length == bytes.size());
    }
}

} // TEST_SUITE
