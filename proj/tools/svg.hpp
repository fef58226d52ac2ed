#pragma once

#include <string>
#include <vector>

namespace ringsim::cli {

struct SvgSeries {
    std::string label;
    std::string color;     // CSS color
    bool markers = false;  // draw circles at the points
    bool line = true;
    std::vector<double> xs;
    std::vector<double> ys;
};

// Minimal self-contained line/scatter plot; no external renderer, fixed
// number formatting so identical inputs give identical bytes.
std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const std::vector<SvgSeries>& series);

}  // namespace ringsim::cli
