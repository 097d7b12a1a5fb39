#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tabkit/lookup.hpp"
#include "tabkit/table.hpp"

namespace tabkit {

struct RgbTriple {
    int r = 0;
    int g = 0;
    int b = 0;

    bool operator==(const RgbTriple&) const = default;
};

struct BandEntry {
    int force = 0;
    double lower_speed = 0;
    RgbTriple rgb;
};

/// Force bands with their lower speed boundaries and colours. Forces run
/// contiguously from 0 and lower speeds are strictly increasing.
class BandPalette {
public:
    static BandPalette from_entries(std::vector<BandEntry> entries);

    /// Columns force, speed, r, g, b of a palette table.
    static BandPalette from_table(const Datatable& table);

    const std::vector<BandEntry>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }

private:
    BandPalette() = default;
    std::vector<BandEntry> entries_;
};

BandPalette load_palette(const std::string& path);

/// Force whose [lower_speed, next lower_speed) band holds the speed; the
/// last band is open-ended. Negative speed: Value.
Outcome<int> band_for_value(double speed, const BandPalette& palette);

/// Exact stored triple. Unknown force: Ref.
Outcome<RgbTriple> rgb_for_force(int force, const BandPalette& palette);

enum class ColorMode { Ansi, Hex, Plain };

/// ansi: 24-bit foreground escape + reset around the text; hex: "#RRGGBB "
/// tag before it; plain: unchanged.
std::string render_colored(std::string_view text, RgbTriple rgb, ColorMode mode);

/// One matched table row, ready for sentence templates.
struct BandedRecord {
    double force = 0;
    double speed = 0;
    std::string description;
    std::string specification;
};

/// Substitutes {force}, {speed}, {description}, {specification} byte-exactly;
/// numbers print without a decimal point when integral. A :lower_first or
/// :upper_first suffix inside the braces recases the first letter of the
/// substituted value. Unknown placeholder or modifier: Value.
Outcome<std::string> build_sentence(std::string_view template_text, const BandedRecord& record);

inline constexpr std::string_view kForceSentenceTemplate =
    "The speed of force {force} is {speed} km/h, its description: {description}, "
    "its specification: {specification}";

inline constexpr std::string_view kSpeedSentenceTemplate =
    "{speed} km/h speed of wind is in force {force}, its description is {description}, "
    "and here {specification:lower_first}";

/// First Unicode scalar uppercased, remainder untouched. Empty input: Value.
Outcome<std::string> capitalize_first(std::string_view text);

enum class ChartFormat { Ascii, Svg };

/// One bar per record in record order, labelled by the x field, length
/// proportional to the y value (longest ASCII bar = 50 characters). SVG
/// output is well-formed XML with one rect per record. When a palette is
/// given and the x value names one of its forces, the bar takes that
/// band's colour. Non-numeric y cell: Value.
Outcome<std::string> emit_bar_chart(const Datatable& table, std::string_view x_field,
                                    std::string_view y_field, ChartFormat format,
                                    const BandPalette* palette = nullptr);

} // namespace tabkit
