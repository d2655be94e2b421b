#ifndef TSA_PLOT_HPP
#define TSA_PLOT_HPP

#include <string>
#include <vector>

namespace tsa {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotAxes {
    std::string x_label;
    std::string y_label;
    std::string title;
};

/// Self-contained SVG line chart: one polyline per series, linear axes with
/// tick labels, and a legend. Output depends only on the inputs.
///
/// Throws std::invalid_argument when `series` is empty, a series has fewer
/// than two points, x and y lengths differ, or a value is not finite.
std::string render_plot(const std::vector<PlotSeries>& series, const PlotAxes& axes);

}  // namespace tsa

#endif  // TSA_PLOT_HPP
