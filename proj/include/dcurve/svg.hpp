#pragma once

#include "dcurve/report.hpp"

#include <array>
#include <string>
#include <string_view>

namespace dcurve {

enum class Panel { decision, ppv, calibration };

Panel parse_panel(const std::string& text);
const char* to_string(Panel p);

// Styling shared by every panel. Model k is drawn in colors[k % size] in all
// panels.
struct SvgStyle {
    int width = 800;
    int height = 600;
    int margin_left = 70;
    int margin_right = 160;
    int margin_top = 40;
    int margin_bottom = 60;
    std::array<std::string_view, 8> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    std::string_view reference_color = "#555555";
    std::string_view dash = "2,4";     // dotted: treat-all PPV comparison
    std::string_view long_dash = "8,4";
};

inline constexpr SvgStyle default_svg_style{};

// Standalone SVG 1.1 document; deterministic for a given report.
std::string render_svg(const ReportDocument& doc, Panel which,
                       const SvgStyle& style = default_svg_style);

} // namespace dcurve
