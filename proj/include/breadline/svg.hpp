#pragma once

#include <string>
#include <vector>

namespace breadline {

// Self-contained SVG renders for the report figures. CSV remains the
// testable contract; these are conveniences behind the --plot flag.

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool dashed = false;
};

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<SvgSeries>& series);

// Grouped bars: one group per category, one bar per series.
std::string svg_bar_chart(const std::string& title,
                          const std::vector<std::string>& categories,
                          const std::vector<SvgSeries>& series);

}  // namespace breadline
