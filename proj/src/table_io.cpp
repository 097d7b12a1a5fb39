#include "tabkit/table_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tabkit {

std::optional<FileFormat> format_from_string(std::string_view name) {
    if (name == "csv") return FileFormat::Csv;
    if (name == "tsv") return FileFormat::Tsv;
    if (name == "json") return FileFormat::Json;
    return std::nullopt;
}

std::optional<FileFormat> format_from_path(std::string_view path) {
    size_t dot = path.rfind('.');
    if (dot == std::string_view::npos) return std::nullopt;
    std::string ext(path.substr(dot + 1));
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return format_from_string(ext);
}

namespace {

/// RFC-style CSV reader; handles quoted cells, doubled quotes, embedded
/// newlines, and CRLF line ends. Returns rows of raw cell strings.
std::vector<std::vector<std::string>> read_csv(std::string_view content) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    size_t line = 1;
    bool quoted = false;
    bool row_started = false;

    auto end_cell = [&]() {
        row.push_back(std::move(cell));
        cell.clear();
    };
    auto end_row = [&]() {
        end_cell();
        rows.push_back(std::move(row));
        row.clear();
        row_started = false;
    };

    for (size_t i = 0; i < content.size(); ++i) {
        char c = content[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                cell.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!cell.empty()) throw IoError("stray quote inside unquoted cell", line);
            quoted = true;
            row_started = true;
            break;
        case ',':
            end_cell();
            row_started = true;
            break;
        case '\r':
            break;
        case '\n':
            if (row_started || !cell.empty() || !row.empty()) end_row();
            ++line;
            break;
        default:
            cell.push_back(c);
            row_started = true;
        }
    }
    if (quoted) throw IoError("unterminated quoted cell", line);
    if (row_started || !cell.empty() || !row.empty()) end_row();
    return rows;
}

std::vector<std::vector<std::string>> read_tsv(std::string_view content) {
    std::vector<std::vector<std::string>> rows;
    std::string current;
    std::vector<std::string> row;
    auto flush_row = [&]() {
        // fully blank lines are skipped, like in CSV
        if (!row.empty() || !current.empty()) {
            row.push_back(std::move(current));
            current.clear();
            rows.push_back(std::move(row));
            row.clear();
        }
    };
    for (size_t i = 0; i < content.size(); ++i) {
        char c = content[i];
        if (c == '\r') continue;
        if (c == '\n') {
            flush_row();
        } else if (c == '\t') {
            row.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    flush_row();
    return rows;
}

Datatable table_from_rows(std::vector<std::vector<std::string>> rows) {
    if (rows.empty()) throw IoError("table file has no rows");
    size_t width = rows.front().size();
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != width) {
            throw IoError("row has " + std::to_string(rows[i].size()) + " cells, expected " +
                              std::to_string(width),
                          i + 1);
        }
    }
    std::vector<std::string> header = std::move(rows.front());
    std::vector<std::vector<std::string>> body(std::make_move_iterator(rows.begin() + 1),
                                               std::make_move_iterator(rows.end()));
    std::vector<ColumnType> types =
        body.empty() ? std::vector<ColumnType>(width, ColumnType::Number) : infer_column_types(body);
    std::vector<std::vector<CellValue>> records;
    records.reserve(body.size());
    for (auto& row : body) {
        std::vector<CellValue> cells;
        cells.reserve(width);
        for (size_t c = 0; c < width; ++c) {
            if (row[c].empty()) {
                cells.emplace_back();
            } else if (types[c] == ColumnType::Number) {
                cells.push_back(cell_from_text(row[c]));
            } else {
                cells.emplace_back(std::move(row[c]));
            }
        }
        records.push_back(std::move(cells));
    }
    return Datatable(std::move(header), std::move(types), std::move(records));
}

Datatable table_from_json(std::string_view content) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("bad JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("header") || !doc.contains("types") ||
        !doc.contains("records")) {
        throw IoError("JSON table must be an object with header, types, and records");
    }
    std::vector<std::string> header;
    for (const auto& name : doc["header"]) {
        if (!name.is_string()) throw IoError("header entries must be strings");
        header.push_back(name.get<std::string>());
    }
    std::vector<ColumnType> types;
    for (const auto& entry : doc["types"]) {
        auto type = entry.is_string() ? column_type_from_string(entry.get<std::string>())
                                      : std::nullopt;
        if (!type) throw IoError("types entries must be \"number\" or \"text\"");
        types.push_back(*type);
    }
    if (header.size() != types.size()) throw IoError("header and types lengths differ");
    std::vector<std::vector<CellValue>> records;
    size_t row_no = 0;
    for (const auto& row : doc["records"]) {
        ++row_no;
        if (!row.is_array() || row.size() != header.size()) {
            throw IoError("record " + std::to_string(row_no) + " does not have " +
                          std::to_string(header.size()) + " cells");
        }
        std::vector<CellValue> cells;
        for (const auto& cell : row) {
            if (cell.is_null()) {
                cells.emplace_back();
            } else if (cell.is_number()) {
                cells.emplace_back(cell.get<double>());
            } else if (cell.is_string()) {
                cells.emplace_back(cell.get<std::string>());
            } else {
                throw IoError("record " + std::to_string(row_no) +
                              " holds a cell that is not null, number, or string");
            }
        }
        records.push_back(std::move(cells));
    }
    return Datatable(std::move(header), std::move(types), std::move(records));
}

std::string csv_quote(const std::string& cell) {
    bool needs = cell.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs) return cell;
    std::string out = "\"";
    for (char c : cell) {
        out.push_back(c);
        if (c == '"') out.push_back('"');
    }
    out.push_back('"');
    return out;
}

std::string serialize_delimited(const Datatable& table, char delim) {
    bool tsv = delim == '\t';
    std::string out;
    auto write_cell = [&](const std::string& text) {
        if (tsv) {
            if (text.find_first_of("\t\n\r") != std::string::npos) {
                throw IoError("TSV cells cannot contain tabs or newlines: \"" + text + "\"");
            }
            out += text;
        } else {
            out += csv_quote(text);
        }
    };
    for (size_t c = 0; c < table.field_count(); ++c) {
        if (c) out.push_back(delim);
        write_cell(table.header()[c]);
    }
    out.push_back('\n');
    for (const auto& row : table.records()) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out.push_back(delim);
            write_cell(row[c].display());
        }
        out.push_back('\n');
    }
    return out;
}

std::string serialize_json(const Datatable& table) {
    nlohmann::json doc;
    doc["header"] = table.header();
    auto& types = doc["types"] = nlohmann::json::array();
    for (ColumnType type : table.column_types()) types.push_back(to_string(type));
    auto& records = doc["records"] = nlohmann::json::array();
    for (const auto& row : table.records()) {
        nlohmann::json out_row = nlohmann::json::array();
        for (const auto& cell : row) {
            if (cell.is_empty()) {
                out_row.push_back(nullptr);
            } else if (cell.is_number()) {
                double v = cell.as_number();
                constexpr double kExactInt = 9007199254740992.0; // 2^53
                if (v > -kExactInt && v < kExactInt && v == static_cast<long long>(v)) {
                    out_row.push_back(static_cast<long long>(v));
                } else {
                    out_row.push_back(v);
                }
            } else {
                out_row.push_back(cell.as_text());
            }
        }
        records.push_back(std::move(out_row));
    }
    return doc.dump(2) + "\n";
}

} // namespace

Datatable parse_table(std::string_view content, FileFormat format) {
    switch (format) {
    case FileFormat::Csv: return table_from_rows(read_csv(content));
    case FileFormat::Tsv: return table_from_rows(read_tsv(content));
    case FileFormat::Json: return table_from_json(content);
    }
    throw IoError("unknown table format");
}

Datatable load_table(const std::string& path, FileFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open table file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_table(buffer.str(), format);
}

std::string serialize_table(const Datatable& table, FileFormat format) {
    switch (format) {
    case FileFormat::Csv: return serialize_delimited(table, ',');
    case FileFormat::Tsv: return serialize_delimited(table, '\t');
    case FileFormat::Json: return serialize_json(table);
    }
    throw IoError("unknown table format");
}

std::string csv_row(const std::vector<CellValue>& cells) {
    std::string out;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_quote(cells[i].display());
    }
    return out;
}

void emit_table(const Datatable& table, const std::string& path, FileFormat format) {
    std::string content = serialize_table(table, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write table file: " + path);
    out << content;
    if (!out.flush()) throw IoError("failed writing table file: " + path);
}

} // namespace tabkit
