#include "doctest.h"

#include "tabkit/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using namespace tabkit;

namespace {

std::string data_path(const std::string& name) {
    return std::string(TABKIT_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Datatable sample_table() {
    return Datatable({"Force", "Speed", "Description"},
                     {ColumnType::Number, ColumnType::Number, ColumnType::Text},
                     {{CellValue(0.0), CellValue(0.0), CellValue("calm")},
                      {CellValue(8.0), CellValue(55.0), CellValue("gale")},
                      {CellValue(12.0), CellValue(), CellValue("hurricane")}});
}

} // namespace

TEST_SUITE("table_io") {

TEST_CASE("format names and extensions") {
    CHECK(format_from_string("csv") == FileFormat::Csv);
    CHECK(format_from_string("tsv") == FileFormat::Tsv);
    CHECK(format_from_string("json") == FileFormat::Json);
    CHECK_FALSE(format_from_string("xlsx").has_value());
    CHECK(format_from_path("a/b/table.csv") == FileFormat::Csv);
    CHECK(format_from_path("T.JSON") == FileFormat::Json);
    CHECK_FALSE(format_from_path("noext").has_value());
}

TEST_CASE("csv parses quoted fields") {
    auto t = parse_table("A,B\n\"x,y\",\"he said \"\"hi\"\"\"\n", FileFormat::Csv);
    CHECK(t.record_count() == 1);
    CHECK(t.cell(0, 0) == CellValue("x,y"));
    CHECK(t.cell(0, 1) == CellValue("he said \"hi\""));
}

TEST_CASE("csv quoted fields may span lines") {
    auto t = parse_table("A\n\"two\nlines\"\n", FileFormat::Csv);
    CHECK(t.record_count() == 1);
    CHECK(t.cell(0, 0) == CellValue("two\nlines"));
}

TEST_CASE("csv type inference applies to the records only") {
    auto t = parse_table("1,2\nx,3\n", FileFormat::Csv);
    CHECK(t.header() == std::vector<std::string>{"1", "2"});
    CHECK(t.column_types()[0] == ColumnType::Text);
    CHECK(t.column_types()[1] == ColumnType::Number);
}

TEST_CASE("csv errors carry line numbers") {
    try {
        parse_table("A,B\n1,2\n3\n", FileFormat::Csv);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_table("A\n\"open\n", FileFormat::Csv), IoError);
    CHECK_THROWS_AS(parse_table("A\nx\"y\n", FileFormat::Csv), IoError);
    CHECK_THROWS_AS(parse_table("", FileFormat::Csv), IoError);
}

TEST_CASE("csv serialization quotes only when needed") {
    Datatable t({"A", "B"}, {ColumnType::Text, ColumnType::Text},
                {{CellValue("plain"), CellValue("with,comma")},
                 {CellValue("with \"quote\""), CellValue("with\nnewline")}});
    std::string out = serialize_table(t, FileFormat::Csv);
    CHECK(out == "A,B\nplain,\"with,comma\"\n\"with \"\"quote\"\"\",\"with\nnewline\"\n");
    auto back = parse_table(out, FileFormat::Csv);
    CHECK(back == t);
}

TEST_CASE("tsv round-trips and refuses structural characters in cells") {
    auto t = sample_table();
    std::string out = serialize_table(t, FileFormat::Tsv);
    CHECK(out == "Force\tSpeed\tDescription\n0\t0\tcalm\n8\t55\tgale\n12\t\thurricane\n");
    CHECK(parse_table(out, FileFormat::Tsv) == t);

    Datatable bad({"A"}, {ColumnType::Text}, {{CellValue("has\ttab")}});
    CHECK_THROWS_AS(serialize_table(bad, FileFormat::Tsv), IoError);
}

TEST_CASE("json carries explicit types and null empties") {
    auto t = sample_table();
    std::string out = serialize_table(t, FileFormat::Json);
    CHECK(out.find("\"types\"") != std::string::npos);
    CHECK(out.find("null") != std::string::npos);
    CHECK(out.find("55") != std::string::npos);
    CHECK(out.find("55.0") == std::string::npos); // integral numbers print bare
    CHECK(parse_table(out, FileFormat::Json) == t);
}

TEST_CASE("json keeps all-empty columns as their declared type") {
    Datatable t({"N"}, {ColumnType::Number}, {{CellValue()}, {CellValue()}});
    auto back = parse_table(serialize_table(t, FileFormat::Json), FileFormat::Json);
    CHECK(back.column_types()[0] == ColumnType::Number);
    CHECK(back == t);
}

TEST_CASE("json rejects malformed documents") {
    CHECK_THROWS_AS(parse_table("{", FileFormat::Json), IoError);
    CHECK_THROWS_AS(parse_table("[]", FileFormat::Json), IoError);
    CHECK_THROWS_AS(parse_table("{\"header\":[\"A\"]}", FileFormat::Json), IoError);
    CHECK_THROWS_AS(
        parse_table("{\"header\":[\"A\"],\"types\":[\"bogus\"],\"records\":[]}", FileFormat::Json),
        IoError);
    CHECK_THROWS_AS(
        parse_table("{\"header\":[\"A\"],\"types\":[\"text\"],\"records\":[[true]]}", FileFormat::Json),
        IoError);
}

TEST_CASE("the reference table round-trips through every format") {
    auto t = load_table(data_path("beaufort.csv"), FileFormat::Csv);
    REQUIRE(t.record_count() == 13);
    for (auto fmt : {FileFormat::Csv, FileFormat::Tsv, FileFormat::Json}) {
        CHECK(parse_table(serialize_table(t, fmt), fmt) == t);
    }
    // and the golden file itself reserializes byte-identically
    CHECK(serialize_table(t, FileFormat::Csv) == slurp(data_path("beaufort.csv")));
}

TEST_CASE("emit_table writes files load_table reads back") {
    auto t = sample_table();
    std::string path = "/tmp/tabkit_io_test.json";
    emit_table(t, path, FileFormat::Json);
    CHECK(load_table(path, FileFormat::Json) == t);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_table("/nonexistent/nope.csv", FileFormat::Csv), IoError);
}

TEST_CASE("csv_row encodes one record") {
    CHECK(csv_row({CellValue(6.0), CellValue(36.0), CellValue("strong breeze")}) ==
          "6,36,strong breeze");
    CHECK(csv_row({CellValue("a,b"), CellValue()}) == "\"a,b\",");
}

TEST_CASE("blank lines are skipped in csv and tsv") {
    auto t = parse_table("A\n\n1\n\n2\n", FileFormat::Csv);
    CHECK(t.record_count() == 2);
    auto tsv = parse_table("A\tB\n\n1\t2\n", FileFormat::Tsv);
    CHECK(tsv.record_count() == 1);
}

} // TEST_SUITE
