#include "tabkit/style.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tabkit/table_io.hpp"
#include "tabkit/utf8.hpp"

namespace tabkit {

BandPalette BandPalette::from_entries(std::vector<BandEntry> entries) {
    if (entries.empty()) throw TableError("palette has no bands");
    for (size_t i = 0; i < entries.size(); ++i) {
        const BandEntry& e = entries[i];
        if (e.force != static_cast<int>(i)) {
            throw TableError("palette forces must run contiguously from 0; entry " +
                             std::to_string(i + 1) + " has force " + std::to_string(e.force));
        }
        if (i > 0 && entries[i - 1].lower_speed >= e.lower_speed) {
            throw TableError("palette lower speeds must be strictly increasing at force " +
                             std::to_string(e.force));
        }
        for (int channel : {e.rgb.r, e.rgb.g, e.rgb.b}) {
            if (channel < 0 || channel > 255) {
                throw TableError("palette RGB channels must be 0-255 at force " +
                                 std::to_string(e.force));
            }
        }
    }
    BandPalette palette;
    palette.entries_ = std::move(entries);
    return palette;
}

BandPalette BandPalette::from_table(const Datatable& table) {
    size_t force = table.column_index("force");
    size_t speed = table.column_index("speed");
    size_t cols[3] = {table.column_index("r"), table.column_index("g"), table.column_index("b")};
    std::vector<BandEntry> entries;
    entries.reserve(table.record_count());
    for (size_t row = 0; row < table.record_count(); ++row) {
        auto number_at = [&](size_t col) {
            CellValue cell = table.cell(row, col);
            if (!cell.is_number()) {
                throw TableError("palette row " + std::to_string(row + 1) +
                                 " holds a non-number in column \"" + table.header()[col] + "\"");
            }
            return cell.as_number();
        };
        BandEntry entry;
        entry.force = static_cast<int>(number_at(force));
        entry.lower_speed = number_at(speed);
        entry.rgb = {static_cast<int>(number_at(cols[0])), static_cast<int>(number_at(cols[1])),
                     static_cast<int>(number_at(cols[2]))};
        entries.push_back(entry);
    }
    return from_entries(std::move(entries));
}

BandPalette load_palette(const std::string& path) {
    return BandPalette::from_table(load_table(path, FileFormat::Csv));
}

Outcome<int> band_for_value(double speed, const BandPalette& palette) {
    if (speed < 0) return LookupError{ErrorKind::Value, format_number(speed)};
    const auto& entries = palette.entries();
    size_t ub = upper_bound_index(entries.size(), speed,
                                  [&](size_t i) { return entries[i].lower_speed; });
    if (ub == 0) return LookupError{ErrorKind::Na, format_number(speed)};
    return entries[ub - 1].force;
}

Outcome<RgbTriple> rgb_for_force(int force, const BandPalette& palette) {
    if (force < 0 || static_cast<size_t>(force) >= palette.size()) {
        return LookupError{ErrorKind::Ref, std::to_string(force)};
    }
    return palette.entries()[static_cast<size_t>(force)].rgb;
}

namespace {

std::string hex_tag(RgbTriple rgb) {
    char buffer[8];
    std::snprintf(buffer, sizeof buffer, "#%02X%02X%02X", rgb.r, rgb.g, rgb.b);
    return buffer;
}

std::string recase_first(std::string_view text, bool upper) {
    if (text.empty()) return std::string(text);
    utf8::Decoded first = utf8::decode(text, 0);
    char32_t mapped = upper ? utf8::to_upper(first.scalar) : utf8::to_lower(first.scalar);
    return utf8::encode(mapped) + std::string(text.substr(first.length));
}

} // namespace

std::string render_colored(std::string_view text, RgbTriple rgb, ColorMode mode) {
    switch (mode) {
    case ColorMode::Ansi:
        return "\x1b[38;2;" + std::to_string(rgb.r) + ";" + std::to_string(rgb.g) + ";" +
               std::to_string(rgb.b) + "m" + std::string(text) + "\x1b[0m";
    case ColorMode::Hex: return hex_tag(rgb) + " " + std::string(text);
    case ColorMode::Plain: return std::string(text);
    }
    return std::string(text);
}

Outcome<std::string> build_sentence(std::string_view template_text, const BandedRecord& record) {
    std::string out;
    out.reserve(template_text.size());
    size_t pos = 0;
    while (pos < template_text.size()) {
        char c = template_text[pos];
        if (c != '{') {
            out.push_back(c);
            ++pos;
            continue;
        }
        size_t close = template_text.find('}', pos);
        if (close == std::string_view::npos) {
            return LookupError{ErrorKind::Value, "unterminated placeholder"};
        }
        std::string_view body = template_text.substr(pos + 1, close - pos - 1);
        std::string_view name = body;
        std::string_view modifier;
        if (size_t colon = body.find(':'); colon != std::string_view::npos) {
            name = body.substr(0, colon);
            modifier = body.substr(colon + 1);
        }
        std::string value;
        if (name == "force") {
            value = format_number(record.force);
        } else if (name == "speed") {
            value = format_number(record.speed);
        } else if (name == "description") {
            value = record.description;
        } else if (name == "specification") {
            value = record.specification;
        } else {
            return LookupError{ErrorKind::Value, "unknown placeholder {" + std::string(body) + "}"};
        }
        if (modifier == "lower_first") {
            value = recase_first(value, false);
        } else if (modifier == "upper_first") {
            value = recase_first(value, true);
        } else if (!modifier.empty()) {
            return LookupError{ErrorKind::Value, "unknown modifier {" + std::string(body) + "}"};
        }
        out += value;
        pos = close + 1;
    }
    return out;
}

Outcome<std::string> capitalize_first(std::string_view text) {
    if (text.empty()) return LookupError{ErrorKind::Value, "empty string"};
    return recase_first(text, true);
}

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::optional<RgbTriple> bar_color(const CellValue& x, const BandPalette* palette) {
    if (!palette || !x.is_number()) return std::nullopt;
    double v = x.as_number();
    if (v != std::floor(v)) return std::nullopt;
    Outcome<RgbTriple> rgb = rgb_for_force(static_cast<int>(v), *palette);
    if (!rgb.ok()) return std::nullopt;
    return rgb.value();
}

} // namespace

Outcome<std::string> emit_bar_chart(const Datatable& table, std::string_view x_field,
                                    std::string_view y_field, ChartFormat format,
                                    const BandPalette* palette) {
    size_t x_col = table.column_index(x_field);
    size_t y_col = table.column_index(y_field);

    std::vector<std::string> labels;
    std::vector<double> values;
    std::vector<CellValue> x_cells;
    for (size_t row = 0; row < table.record_count(); ++row) {
        CellValue y = table.cell(row, y_col);
        if (!y.is_number()) {
            return LookupError{ErrorKind::Value,
                               "record " + std::to_string(row + 1) + " has non-numeric \"" +
                                   std::string(y_field) + "\": " + y.display()};
        }
        x_cells.push_back(table.cell(row, x_col));
        labels.push_back(x_cells.back().display());
        values.push_back(y.as_number());
    }

    double max_value = 0;
    for (double v : values) max_value = std::max(max_value, v);

    auto bar_length = [&](double v, long full) {
        if (max_value <= 0 || v <= 0) return 0L;
        return std::lround(v / max_value * static_cast<double>(full));
    };

    std::string out;
    if (format == ChartFormat::Ascii) {
        size_t label_width = 0;
        for (const auto& label : labels) {
            label_width = std::max(label_width, utf8::scalar_count(label));
        }
        for (size_t i = 0; i < labels.size(); ++i) {
            out.append(label_width - utf8::scalar_count(labels[i]), ' ');
            out += labels[i];
            out += " | ";
            std::string bar(static_cast<size_t>(bar_length(values[i], 50)), '#');
            if (auto rgb = bar_color(x_cells[i], palette)) {
                out += render_colored(bar, *rgb, ColorMode::Ansi);
            } else {
                out += bar;
            }
            out.push_back('\n');
        }
        return out;
    }

    const long bar_area = 500;
    const long row_height = 24;
    const long top = 10;
    long height = top * 2 + row_height * static_cast<long>(labels.size());
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"" +
           std::to_string(height) + "\">\n";
    for (size_t i = 0; i < labels.size(); ++i) {
        long y0 = top + row_height * static_cast<long>(i);
        std::string fill = "#4472C4";
        if (auto rgb = bar_color(x_cells[i], palette)) fill = hex_tag(*rgb);
        out += "  <text x=\"10\" y=\"" + std::to_string(y0 + 14) + "\">" + xml_escape(labels[i]) +
               "</text>\n";
        out += "  <rect x=\"70\" y=\"" + std::to_string(y0) + "\" width=\"" +
               std::to_string(bar_length(values[i], bar_area)) + "\" height=\"18\" fill=\"" + fill +
               "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace tabkit
