#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tabkit/cleanse.hpp"
#include "tabkit/lookup.hpp"
#include "tabkit/sheet.hpp"
#include "tabkit/style.hpp"
#include "tabkit/table_io.hpp"
#include "tabkit/utf8.hpp"

namespace {

using namespace tabkit;

constexpr int kExitOk = 0;
constexpr int kExitLookupError = 1;
constexpr int kExitInputError = 2;
constexpr int kExitAuditFail = 3;

constexpr std::string_view kSelectSentenceTemplate =
    "{description:upper_first} is the description of force {force}, its speed is "
    "{speed} km/h, and here {specification:lower_first}";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

FileFormat resolve_format(const std::string& flag, const std::string& path) {
    if (!flag.empty()) {
        if (auto fmt = format_from_string(flag)) return *fmt;
        throw IoError("unknown table format: " + flag);
    }
    return format_from_path(path).value_or(FileFormat::Csv);
}

/// Loads a table and insists on 1NF, naming the first violation otherwise.
Datatable load_validated(const std::string& path, const std::string& format_flag) {
    Datatable table = load_table(path, resolve_format(format_flag, path));
    ValidationReport report = validate_1nf(table);
    if (!report.is_1nf) {
        const Violation& v = report.violations.front();
        throw IoError(path + " is not 1NF (row " + std::to_string(v.row) + ", col " +
                      std::to_string(v.column) + ": " + v.reason + ")");
    }
    return table;
}

size_t find_column_fold(const Datatable& table, std::initializer_list<std::string_view> names) {
    for (size_t c = 0; c < table.header().size(); ++c) {
        for (std::string_view name : names) {
            if (utf8::equal_fold(table.header()[c], name)) return c;
        }
    }
    throw IoError("table has no \"" + std::string(*names.begin()) + "\" field");
}

struct Roles {
    size_t force;
    size_t speed;
    size_t description;
    size_t specification;
};

Roles resolve_roles(const Datatable& table) {
    return {find_column_fold(table, {"force"}), find_column_fold(table, {"speed"}),
            find_column_fold(table, {"description"}),
            find_column_fold(table, {"specification", "specifications"})};
}

BandedRecord record_at(const Datatable& table, const Roles& roles, size_t row) {
    const CellValue& force = table.cell(row, roles.force);
    const CellValue& speed = table.cell(row, roles.speed);
    if (!force.is_number() || !speed.is_number()) {
        throw IoError("record " + std::to_string(row + 1) + " lacks numeric force/speed");
    }
    return {force.as_number(), speed.as_number(), table.cell(row, roles.description).display(),
            table.cell(row, roles.specification).display()};
}

void print_audit(const AuditLog& log) {
    for (const AuditEntry& entry : log.entries) {
        std::string label =
            entry.step_index ? "step " + std::to_string(entry.step_index) : "table";
        std::cerr << label << ": " << entry.description << " | count " << entry.count;
        if (entry.expected) std::cerr << " | expected " << *entry.expected;
        std::cerr << " | " << (entry.passed ? "PASS" : "FAIL") << "\n";
    }
}

double require_number(const std::string& value, const std::string& by) {
    auto number = parse_number(value);
    if (!number) throw IoError("--value must be a number for --by " + by);
    return *number;
}

struct LookupHit {
    size_t row; // 0-based record index
    BandedRecord record;
};

/// Shared by lookup and sentence: resolves --by/--value to a record, or the
/// spreadsheet error to report.
Outcome<LookupHit> run_lookup_query(const Datatable& table, const Roles& roles,
                                    const std::string& by, const std::string& value) {
    Outcome<size_t> position = [&]() -> Outcome<size_t> {
        if (by == "force") {
            return match_exact(CellValue(require_number(value, by)),
                               column_vector(table, table.header()[roles.force]));
        }
        if (by == "speed") {
            return match_ascending(CellValue(require_number(value, by)),
                                   column_vector(table, table.header()[roles.speed]));
        }
        return match_exact(CellValue(value), column_vector(table, table.header()[roles.description]));
    }();
    if (!position.ok()) return position.error();
    size_t row = position.value() - 1;
    LookupHit hit{row, record_at(table, roles, row)};
    // The speed sentence embeds the queried speed, not the band's lower bound.
    if (by == "speed") hit.record.speed = require_number(value, by);
    return hit;
}

int emit_outcome_error(const LookupError& error) {
    std::cout << error.display() << "\n";
    return kExitLookupError;
}

int run_convert(const std::string& script_path, const std::string& in_path,
                const std::string& out_path, const std::string& format_flag) {
    CleanupScript script = load_script(script_path);
    RunResult result = run_script(script, read_file(in_path));
    print_audit(result.audit);
    if (!result.ok()) {
        std::cerr << "error: " << result.error.value_or("conversion failed") << "\n";
        return kExitInputError;
    }
    emit_table(*result.table, out_path, resolve_format(format_flag, out_path));
    return result.audit.all_passed() ? kExitOk : kExitAuditFail;
}

int run_validate(const std::string& table_path, const std::string& format_flag) {
    Datatable table = load_table(table_path, resolve_format(format_flag, table_path));
    ValidationReport report = validate_1nf(table);
    std::cout << "records: " << report.record_count << "\n";
    std::cout << "fields: " << report.field_count << "\n";
    auto where = [](const Violation& v) {
        std::string out;
        out += v.row ? "row " + std::to_string(v.row) : std::string("header");
        if (v.column) out += ", col " + std::to_string(v.column);
        return out;
    };
    for (const Violation& v : report.violations) {
        std::cout << "violation [" << where(v) << "] " << v.reason << "\n";
    }
    for (const Violation& v : report.warnings) {
        std::cout << "warning [" << where(v) << "] " << v.reason << "\n";
    }
    std::cout << "1NF: " << (report.is_1nf ? "yes" : "no") << "\n";
    return report.is_1nf ? kExitOk : kExitLookupError;
}

int run_lookup(const std::string& table_path, const std::string& format_flag,
               const std::string& by, const std::string& value, const std::string& format,
               const std::string& palette_path) {
    Datatable table = load_validated(table_path, format_flag);
    Roles roles = resolve_roles(table);
    Outcome<LookupHit> hit = run_lookup_query(table, roles, by, value);
    if (!hit.ok()) return emit_outcome_error(hit.error());

    if (format == "row") {
        std::cout << csv_row(table.records()[hit.value().row]) << "\n";
        return kExitOk;
    }
    std::string_view tmpl = by == "speed" ? kSpeedSentenceTemplate : kForceSentenceTemplate;
    Outcome<std::string> sentence = build_sentence(tmpl, hit.value().record);
    if (!sentence.ok()) return emit_outcome_error(sentence.error());
    if (format == "sentence") {
        std::cout << sentence.value() << "\n";
        return kExitOk;
    }
    if (palette_path.empty()) throw IoError("--format colored needs --palette");
    BandPalette palette = load_palette(palette_path);
    Outcome<RgbTriple> rgb = rgb_for_force(static_cast<int>(hit.value().record.force), palette);
    if (!rgb.ok()) return emit_outcome_error(rgb.error());
    std::cout << render_colored(sentence.value(), rgb.value(), ColorMode::Ansi) << "\n";
    return kExitOk;
}

int run_sentence(const std::string& table_path, const std::string& format_flag,
                 const std::string& by, const std::string& value, std::string template_text) {
    Datatable table = load_validated(table_path, format_flag);
    Roles roles = resolve_roles(table);
    Outcome<LookupHit> hit = run_lookup_query(table, roles, by, value);
    if (!hit.ok()) return emit_outcome_error(hit.error());
    if (template_text.empty()) {
        template_text = by == "speed" ? std::string(kSpeedSentenceTemplate)
                                      : std::string(kForceSentenceTemplate);
    }
    Outcome<std::string> sentence = build_sentence(template_text, hit.value().record);
    if (!sentence.ok()) return emit_outcome_error(sentence.error());
    std::cout << sentence.value() << "\n";
    return kExitOk;
}

int run_select(const std::string& table_path, const std::string& format_flag,
               const std::string& mode, long choice, const std::string& field,
               const std::string& format) {
    Datatable table = load_validated(table_path, format_flag);
    Roles roles = resolve_roles(table);
    size_t field_col = find_column_fold(table, {field});
    std::vector<CellValue> items = column_vector(table, table.header()[field_col]);

    SelectionMode selection = mode == "index" ? SelectionMode::Positional : SelectionMode::ByValue;
    Outcome<CellValue> picked = select(items, selection, choice);
    if (!picked.ok()) return emit_outcome_error(picked.error());

    size_t row;
    if (selection == SelectionMode::Positional) {
        row = static_cast<size_t>(choice) - 1;
    } else {
        Outcome<size_t> position = match_exact(picked.value(), items);
        if (!position.ok()) return emit_outcome_error(position.error());
        row = position.value() - 1;
    }

    std::cout << picked.value().display() << "\n";
    if (format == "row") {
        std::cout << csv_row(table.records()[row]) << "\n";
        return kExitOk;
    }
    Outcome<std::string> sentence =
        build_sentence(kSelectSentenceTemplate, record_at(table, roles, row));
    if (!sentence.ok()) return emit_outcome_error(sentence.error());
    std::cout << sentence.value() << "\n";
    return kExitOk;
}

int run_eval(const std::string& table_path, const std::string& format_flag,
             const std::string& anchor_text, bool no_header,
             const std::vector<std::string>& sets, const std::string& formula) {
    Sheet sheet;
    if (!table_path.empty()) {
        Datatable table = load_validated(table_path, format_flag);
        auto anchor = parse_cell_ref(anchor_text);
        if (!anchor) throw IoError("bad --anchor cell reference: " + anchor_text);
        if (auto error = sheet.bind_table(table, *anchor, !no_header)) {
            throw IoError("cannot bind table: " + error->offending);
        }
    }
    for (const std::string& assignment : sets) {
        size_t eq = assignment.find('=');
        if (eq == std::string::npos) throw IoError("--set needs REF=VALUE, got: " + assignment);
        auto ref = parse_cell_ref(assignment.substr(0, eq));
        if (!ref) throw IoError("bad --set cell reference: " + assignment.substr(0, eq));
        sheet.set(*ref, cell_from_text(assignment.substr(eq + 1)));
    }

    FormulaAst ast;
    try {
        ast = parse_formula(formula);
    } catch (const FormulaParseError& e) {
        std::cerr << "formula error: " << e.what() << "\n";
        return kExitInputError;
    }
    Outcome<CellValue> result = evaluate(ast, sheet);
    if (!result.ok()) return emit_outcome_error(result.error());
    std::cout << result.value().display() << "\n";
    return kExitOk;
}

int run_chart(const std::string& table_path, const std::string& format_flag,
              const std::string& x_field, const std::string& y_field, const std::string& format,
              const std::string& palette_path, const std::string& out_path) {
    Datatable table = load_validated(table_path, format_flag);
    size_t x = find_column_fold(table, {x_field});
    size_t y = find_column_fold(table, {y_field});

    std::optional<BandPalette> palette;
    if (!palette_path.empty()) palette = load_palette(palette_path);

    ChartFormat chart_format = format == "svg" ? ChartFormat::Svg : ChartFormat::Ascii;
    Outcome<std::string> chart =
        emit_bar_chart(table, table.header()[x], table.header()[y], chart_format,
                       palette ? &*palette : nullptr);
    if (!chart.ok()) return emit_outcome_error(chart.error());
    if (out_path.empty()) {
        std::cout << chart.value();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw IoError("cannot write chart file: " + out_path);
        out << chart.value();
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Table cleanup, spreadsheet-semantics lookups, and charting"};
    app.require_subcommand(1);

    auto* convert = app.add_subcommand("convert", "Run a cleanup script over raw text");
    std::string cv_script, cv_in, cv_out, cv_format;
    convert->add_option("--script", cv_script, "Cleanup script file")->required();
    convert->add_option("--in", cv_in, "Raw input text file")->required();
    convert->add_option("--out", cv_out, "Output table file")->required();
    convert->add_option("--format", cv_format, "Output format: csv, tsv, json");

    auto* validate = app.add_subcommand("validate", "Check a table for 1NF");
    std::string va_table, va_tformat;
    validate->add_option("--table", va_table, "Table file")->required();
    validate->add_option("--table-format", va_tformat, "Table format: csv, tsv, json");

    auto* lookup = app.add_subcommand("lookup", "Find a record by force, speed, or description");
    std::string lk_table, lk_tformat, lk_by, lk_value, lk_format = "row", lk_palette;
    lookup->add_option("--table", lk_table, "Table file")->required();
    lookup->add_option("--table-format", lk_tformat, "Table format: csv, tsv, json");
    lookup->add_option("--by", lk_by, "Query key: force, speed, description")
        ->required()
        ->check(CLI::IsMember({"force", "speed", "description"}));
    lookup->add_option("--value", lk_value, "Query value")->required();
    lookup->add_option("--format", lk_format, "Output: row, sentence, colored")
        ->check(CLI::IsMember({"row", "sentence", "colored"}));
    lookup->add_option("--palette", lk_palette, "Palette CSV for colored output");

    auto* sentence = app.add_subcommand("sentence", "Build a sentence for a lookup");
    std::string sn_table, sn_tformat, sn_by, sn_value, sn_template;
    sentence->add_option("--table", sn_table, "Table file")->required();
    sentence->add_option("--table-format", sn_tformat, "Table format: csv, tsv, json");
    sentence->add_option("--by", sn_by, "Query key: force, speed, description")
        ->required()
        ->check(CLI::IsMember({"force", "speed", "description"}));
    sentence->add_option("--value", sn_value, "Query value")->required();
    sentence->add_option("--template", sn_template,
                         "Template with {force}, {speed}, {description}, {specification}");

    auto* select_cmd = app.add_subcommand("select", "Drop-down selection from a field");
    std::string se_table, se_tformat, se_mode, se_field = "Description", se_format = "row";
    long se_choice = 0;
    select_cmd->add_option("--table", se_table, "Table file")->required();
    select_cmd->add_option("--table-format", se_tformat, "Table format: csv, tsv, json");
    select_cmd->add_option("--mode", se_mode, "index (position) or value (item)")
        ->required()
        ->check(CLI::IsMember({"index", "value"}));
    select_cmd->add_option("--choice", se_choice, "1-based choice")->required();
    select_cmd->add_option("--field", se_field, "Selection field (default Description)");
    select_cmd->add_option("--format", se_format, "Output: row, sentence")
        ->check(CLI::IsMember({"row", "sentence"}));

    auto* eval = app.add_subcommand("eval", "Evaluate a formula against a bound table");
    std::string ev_table, ev_tformat, ev_anchor = "A1", ev_formula;
    bool ev_no_header = false;
    std::vector<std::string> ev_sets;
    eval->add_option("--table", ev_table, "Table file to bind");
    eval->add_option("--table-format", ev_tformat, "Table format: csv, tsv, json");
    eval->add_option("--anchor", ev_anchor, "Bind anchor cell (default A1)");
    eval->add_flag("--no-header", ev_no_header, "Bind records only, no header row");
    eval->add_option("--set", ev_sets, "Cell assignment REF=VALUE (repeatable)");
    eval->add_option("formula", ev_formula, "Formula text starting with '='")->required();

    auto* chart = app.add_subcommand("chart", "Bar chart of one field against another");
    std::string ch_table, ch_tformat, ch_x = "Force", ch_y = "Speed", ch_format = "ascii";
    std::string ch_palette, ch_out;
    chart->add_option("--table", ch_table, "Table file")->required();
    chart->add_option("--table-format", ch_tformat, "Table format: csv, tsv, json");
    chart->add_option("--x", ch_x, "Label field (default Force)");
    chart->add_option("--y", ch_y, "Value field (default Speed)");
    chart->add_option("--format", ch_format, "Chart output: ascii, svg")
        ->check(CLI::IsMember({"ascii", "svg"}));
    chart->add_option("--palette", ch_palette, "Palette CSV for bar colours");
    chart->add_option("--out", ch_out, "Write chart to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (convert->parsed()) return run_convert(cv_script, cv_in, cv_out, cv_format);
        if (validate->parsed()) return run_validate(va_table, va_tformat);
        if (lookup->parsed())
            return run_lookup(lk_table, lk_tformat, lk_by, lk_value, lk_format, lk_palette);
        if (sentence->parsed()) return run_sentence(sn_table, sn_tformat, sn_by, sn_value, sn_template);
        if (select_cmd->parsed())
            return run_select(se_table, se_tformat, se_mode, se_choice, se_field, se_format);
        if (eval->parsed())
            return run_eval(ev_table, ev_tformat, ev_anchor, ev_no_header, ev_sets, ev_formula);
        if (chart->parsed())
            return run_chart(ch_table, ch_tformat, ch_x, ch_y, ch_format, ch_palette, ch_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
