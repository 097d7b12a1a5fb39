// Acceptance suite: one criterion per check_* function, one [PASS]/[FAIL]
// line each, nonzero exit when anything fails.

#include "tabkit/cleanse.hpp"
#include "tabkit/lookup.hpp"
#include "tabkit/sheet.hpp"
#include "tabkit/style.hpp"
#include "tabkit/table.hpp"
#include "tabkit/table_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace tabkit;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << name;
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
}

std::string data_path(const std::string& name) {
    return std::string(TABKIT_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
    double seconds = 0;
};

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_path = "/tmp/tabkit_accept_out_" + std::to_string(++counter);
    std::string err_path = out_path + ".err";
    std::string cmd = std::string(TABKIT_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    auto t0 = std::chrono::steady_clock::now();
    int status = std::system(cmd.c_str());
    auto t1 = std::chrono::steady_clock::now();
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

Datatable converted_table() {
    auto script = load_script(data_path("beaufort.cleanup"));
    auto result = run_script(script, slurp(data_path("beaufort_raw.txt")));
    if (!result.ok()) throw std::runtime_error("conversion failed: " + result.error.value_or("?"));
    return *result.table;
}

const std::vector<RgbTriple> kReferenceRgb = {
    {210, 211, 213}, {0, 135, 75},  {0, 166, 81},  {78, 183, 72},  {167, 206, 56},
    {215, 223, 37},  {255, 203, 3}, {251, 168, 28}, {245, 131, 33}, {241, 96, 35},
    {240, 64, 35},   {238, 28, 37}, {196, 21, 28}};

// criterion 1: the shipped cleanup script audits 14, 13, 14 and succeeds fast
void check_replacement_audit() {
    std::string out_path = "/tmp/tabkit_accept_convert.csv";
    auto r = run_cli("convert --script " + data_path("beaufort.cleanup") + " --in " +
                     data_path("beaufort_raw.txt") + " --out " + out_path);
    std::vector<long> counts;
    std::istringstream audit(r.err);
    std::string line;
    while (std::getline(audit, line)) {
        auto at = line.find("replace");
        auto c = line.find("count ");
        if (at != std::string::npos && c != std::string::npos) {
            counts.push_back(std::strtol(line.c_str() + c + 6, nullptr, 10));
        }
    }
    bool ok = r.exit_code == 0 && counts == std::vector<long>{14, 13, 14} &&
              r.err.find("FAIL") == std::string::npos && r.seconds < 1.0 &&
              slurp(out_path) == slurp(data_path("beaufort.csv"));
    std::ostringstream detail;
    detail << "replacement counts";
    for (long c : counts) detail << " " << c;
    detail << ", exit " << r.exit_code << ", " << std::fixed << std::setprecision(3) << r.seconds
           << "s";
    report(1, "replacement audit", ok, detail.str());
    std::remove(out_path.c_str());
}

// criterion 2: converted table is 13 records x 4 fields, [N, N, T, T]
void check_table_shape() {
    auto t = converted_table();
    auto types = t.column_types();
    bool ok = t.record_count() == 13 && t.field_count() == 4 &&
              types == std::vector<ColumnType>{ColumnType::Number, ColumnType::Number,
                                               ColumnType::Text, ColumnType::Text} &&
              validate_1nf(t).is_1nf;
    std::ostringstream detail;
    detail << t.record_count() << " records x " << t.field_count() << " fields [";
    for (size_t i = 0; i < types.size(); ++i) detail << (i ? ", " : "") << to_string(types[i]);
    detail << "]";
    report(2, "first normal form shape", ok, detail.str());
}

// criterion 3: force 6 resolves to speed 36 / "strong breeze", byte-exact row
void check_force_lookup() {
    auto r = run_cli("lookup --table " + data_path("beaufort.csv") + " --by force --value 6");
    const std::string expected = "6,36,strong breeze,Large branches in motion.\n";
    bool ok = r.exit_code == 0 && r.out == expected;

    auto t = converted_table();
    auto speed = index_match(CellValue(6.0), column_vector(t, "Force"), column_vector(t, "Speed"),
                             MatchType::Exact);
    auto desc = index_match(CellValue(6.0), column_vector(t, "Force"),
                            column_vector(t, "Description"), MatchType::Exact);
    ok = ok && speed.ok() && speed.value() == CellValue(36.0) && desc.ok() &&
         desc.value() == CellValue("strong breeze");
    report(3, "force lookup", ok,
           ok ? "speed 36, description \"strong breeze\"" : "row was: " + r.out);
}

// criterion 4: speed 60 resolves through the binary-search path to force 8
void check_speed_lookup() {
    auto t = converted_table();
    auto speeds = column_vector(t, "Speed");
    auto forces = column_vector(t, "Force");

    auto algo = choose_algorithm(speeds, QueryKind::Banded);
    bool binary_path = algo.ok() && algo.value() == MatchType::AscendingLargestLeq;

    size_t probes = 0;
    std::vector<double> raw;
    for (const auto& c : speeds) raw.push_back(c.as_number());
    upper_bound_index(raw.size(), 60.0, [&](size_t i) {
        ++probes;
        return raw[i];
    });

    auto force = index_match(CellValue(60.0), speeds, forces, MatchType::AscendingLargestLeq);
    auto desc = index_match(CellValue(60.0), speeds, column_vector(t, "Description"),
                            MatchType::AscendingLargestLeq);
    auto r = run_cli("lookup --table " + data_path("beaufort.csv") + " --by speed --value 60");

    bool ok = binary_path && probes <= 4 && force.ok() && force.value() == CellValue(8.0) &&
              desc.ok() && desc.value() == CellValue("gale") && r.exit_code == 0 &&
              r.out == "8,55,gale,Twigs break off trees.\n";
    std::ostringstream detail;
    detail << "force 8, description \"gale\", " << probes << " probes";
    report(4, "speed lookup via binary search", ok, detail.str());
}

// criterion 5: both reference sentences are byte-exact
void check_sentences() {
    const std::string force_expected =
        "The speed of force 6 is 36 km/h, its description: strong breeze, "
        "its specification: Large branches in motion.";
    const std::string speed_expected =
        "60 km/h speed of wind is in force 8, its description is gale, "
        "and here twigs break off trees.";

    BandedRecord strong_breeze{6, 36, "strong breeze", "Large branches in motion."};
    BandedRecord gale{8, 60, "gale", "Twigs break off trees."};
    auto s1 = build_sentence(kForceSentenceTemplate, strong_breeze);
    auto s2 = build_sentence(kSpeedSentenceTemplate, gale);

    auto c1 = run_cli("lookup --table " + data_path("beaufort.csv") +
                      " --by force --value 6 --format sentence");
    auto c2 = run_cli("lookup --table " + data_path("beaufort.csv") +
                      " --by speed --value 60 --format sentence");

    bool ok = s1.ok() && s1.value() == force_expected && s2.ok() && s2.value() == speed_expected &&
              c1.exit_code == 0 && c1.out == force_expected + "\n" && c2.exit_code == 0 &&
              c2.out == speed_expected + "\n";
    report(5, "templated sentences", ok,
           ok ? "both reference sentences byte-exact" : "mismatch; got: " + c1.out + c2.out);
}

// criterion 6: all thirteen palette triples match the reference colours
void check_palette() {
    BandPalette p = load_palette(data_path("palette.csv"));
    bool ok = p.size() == 13;
    for (size_t i = 0; ok && i < p.size(); ++i) {
        ok = p.entries()[i].rgb == kReferenceRgb[i];
    }
    auto anchor0 = rgb_for_force(0, p);
    auto anchor2 = rgb_for_force(2, p);
    auto anchor12 = rgb_for_force(12, p);
    ok = ok && anchor0.ok() && anchor0.value() == RgbTriple{210, 211, 213} && anchor2.ok() &&
         anchor2.value() == RgbTriple{0, 166, 81} && anchor12.ok() &&
         anchor12.value() == RgbTriple{196, 21, 28};
    report(6, "colour palette", ok,
           "13 triples, anchors 210/211/213, 0/166/81, 196/21/28");
}

// criterion 7: the nine reference formulas evaluate to their sheet values
void check_formula_engine() {
    Sheet sheet;
    auto table = load_table(data_path("beaufort.csv"), FileFormat::Csv);
    if (sheet.bind_table(table, *parse_cell_ref("A1"), true)) {
        report(7, "formula engine", false, "could not bind the table");
        return;
    }
    sheet.set(*parse_cell_ref("F3"), CellValue(6.0));
    sheet.set(*parse_cell_ref("F8"), CellValue(60.0));
    sheet.set(*parse_cell_ref("F10"), CellValue("gale"));

    const std::vector<std::pair<std::string, std::string>> cases = {
        {"=MATCH(F3,A2:A14,0)", "7"},
        {"=INDEX(B2:B14,MATCH(F3,A2:A14,0))", "36"},
        {"=MATCH(F8,B2:B14)", "9"},
        {"=INDEX(A2:A14,MATCH(F8,B2:B14))", "8"},
        {"=INDEX(D2:D14,MATCH(F10,C2:C14,0))", "Twigs break off trees."},
        {"=F10", "gale"},
        {"=UPPER(LEFT(F10))&RIGHT(F10,LEN(F10)-1)", "Gale"},
    };
    size_t passed = 0;
    std::string first_miss;
    for (const auto& [formula, expected] : cases) {
        auto out = evaluate_formula(formula, sheet);
        if (out.ok() && out.value().display() == expected) {
            ++passed;
        } else if (first_miss.empty()) {
            first_miss = formula + " gave " + (out.ok() ? out.value().display() : out.error().display());
        }
    }

    // direct position lookups, evaluated at the gale row position
    Sheet positional = sheet;
    positional.set(*parse_cell_ref("F3"), CellValue(9.0));
    const std::vector<std::pair<std::string, std::string>> position_cases = {
        {"=INDEX(D2:D14,F3)", "Twigs break off trees."},
        {"=INDEX(B2:B14,F3)", "55"},
    };
    for (const auto& [formula, expected] : position_cases) {
        auto out = evaluate_formula(formula, positional);
        if (out.ok() && out.value().display() == expected) {
            ++passed;
        } else if (first_miss.empty()) {
            first_miss = formula + " gave " + (out.ok() ? out.value().display() : out.error().display());
        }
    }

    bool ok = passed == cases.size() + position_cases.size();
    report(7, "formula engine", ok,
           ok ? "all 9 reference formulas" : "first mismatch: " + first_miss);
}

// criterion 8: search primitives agree with brute-force oracles, zero failures
void check_search_oracles() {
    std::mt19937 rng(1870);
    std::uniform_int_distribution<int> len_dist(1, 60);
    std::uniform_int_distribution<int> val_dist(-50, 50);

    size_t mismatches = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<double> sorted(static_cast<size_t>(len_dist(rng)));
        for (auto& x : sorted) x = val_dist(rng);
        std::sort(sorted.begin(), sorted.end());
        std::vector<CellValue> cells;
        for (double v : sorted) cells.push_back(CellValue(v));

        double q = val_dist(rng) + (iter % 3 == 0 ? 0.5 : 0.0);
        size_t best = 0;
        for (size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] <= q) best = i + 1;
        }
        auto got = match(CellValue(q), cells, MatchType::AscendingLargestLeq);
        if (best == 0 ? (got.ok() || got.error().kind != ErrorKind::Na)
                      : (!got.ok() || got.value() != best)) {
            ++mismatches;
        }

        // exact match against a first-occurrence scan over small-alphabet text
        std::vector<CellValue> texts(sorted.size());
        for (auto& c : texts) c = CellValue(std::string(1, static_cast<char>('a' + (val_dist(rng) + 50) % 9)));
        CellValue probe(std::string(1, static_cast<char>('a' + (val_dist(rng) + 50) % 9)));
        size_t first = 0;
        for (size_t i = 0; i < texts.size(); ++i) {
            if (texts[i].as_text() == probe.as_text()) {
                first = i + 1;
                break;
            }
        }
        auto exact = match(probe, texts, MatchType::Exact);
        if (first == 0 ? exact.ok() : (!exact.ok() || exact.value() != first)) ++mismatches;

        // composition: index_match equals match then index by hand
        auto composed = index_match(probe, texts, cells, MatchType::Exact);
        if (first == 0) {
            if (composed.ok()) ++mismatches;
        } else if (!composed.ok() || composed.value() != cells[first - 1]) {
            ++mismatches;
        }
    }
    report(8, "search oracle property suite", mismatches == 0,
           "1000 random vectors, " + std::to_string(mismatches) + " mismatches");
}

// criterion 9: band colouring agrees with index-over-match at every step
void check_band_consistency() {
    BandPalette palette = load_palette(data_path("palette.csv"));
    auto t = load_table(data_path("beaufort.csv"), FileFormat::Csv);
    auto speeds = column_vector(t, "Speed");
    auto forces = column_vector(t, "Force");

    size_t disagreements = 0;
    for (int i = 0; i <= 1500; ++i) {
        double speed = i / 10.0;
        auto band = band_for_value(speed, palette);
        auto viaMatch = index_match(CellValue(speed), speeds, forces,
                                    MatchType::AscendingLargestLeq);
        bool same = band.ok() && viaMatch.ok() &&
                    viaMatch.value() == CellValue(static_cast<double>(band.value()));
        if (!same) ++disagreements;
    }
    for (double boundary : {0.0, 2.0, 7.0, 13.0, 19.0, 27.0, 36.0, 45.0, 55.0, 66.0, 78.0, 91.0, 105.0}) {
        auto band = band_for_value(boundary, palette);
        auto viaMatch = index_match(CellValue(boundary), speeds, forces,
                                    MatchType::AscendingLargestLeq);
        if (!band.ok() || !viaMatch.ok() ||
            viaMatch.value() != CellValue(static_cast<double>(band.value()))) {
            ++disagreements;
        }
    }
    report(9, "band consistency sweep", disagreements == 0,
           "speeds 0..150 step 0.1 plus all boundaries, " + std::to_string(disagreements) +
               " disagreements");
}

// criterion 10: parse/print and emit/load round trips are identities
void check_round_trips() {
    std::mt19937 rng(505);
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_int_distribution<int> small(1, 14);
    std::function<std::string(int)> gen = [&](int depth) -> std::string {
        if (depth <= 0) {
            switch (pick(rng) % 4) {
            case 0: return std::to_string(small(rng));
            case 1: return "\"t" + std::to_string(small(rng)) + "\"";
            case 2: return "B" + std::to_string(small(rng));
            default: return "F" + std::to_string(small(rng));
            }
        }
        switch (pick(rng)) {
        case 0: return gen(depth - 1) + "&" + gen(depth - 1);
        case 1: return gen(depth - 1) + "+" + gen(depth - 1);
        case 2: return gen(depth - 1) + "-" + gen(depth - 1);
        case 3: return "UPPER(" + gen(depth - 1) + ")";
        case 4: return "RIGHT(" + gen(depth - 1) + "," + std::to_string(small(rng)) + ")";
        default: return "(" + gen(depth - 1) + ")";
        }
    };

    size_t formula_failures = 0;
    for (int i = 0; i < 200; ++i) {
        std::string formula = "=" + gen(3);
        try {
            std::string printed = print_formula(parse_formula(formula));
            if (print_formula(parse_formula(printed)) != printed) ++formula_failures;
        } catch (const FormulaParseError&) {
            ++formula_failures;
        }
    }

    auto t = load_table(data_path("beaufort.csv"), FileFormat::Csv);
    size_t table_failures = 0;
    for (auto fmt : {FileFormat::Csv, FileFormat::Tsv, FileFormat::Json}) {
        if (parse_table(serialize_table(t, fmt), fmt) != t) ++table_failures;
    }

    bool ok = formula_failures == 0 && table_failures == 0;
    report(10, "round-trip identities", ok,
           "200 formulas, 3 table formats, " +
               std::to_string(formula_failures + table_failures) + " failures");
}

} // namespace

int main() {
    std::cout << "acceptance criteria\n===================\n";
    try {
        check_replacement_audit();
        check_table_shape();
        check_force_lookup();
        check_speed_lookup();
        check_sentences();
        check_palette();
        check_formula_engine();
        check_search_oracles();
        check_band_consistency();
        check_round_trips();
    } catch (const std::exception& e) {
        std::cout << "[FAIL] unexpected exception: " << e.what() << "\n";
        ++failures;
    }
    std::cout << "===================\n"
              << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
