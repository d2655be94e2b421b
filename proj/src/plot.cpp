#include "tsa/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace tsa {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;  // room for the legend
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Step from the 1-2-5 sequence giving roughly `target` intervals.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    const double nice = f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0;
    return nice * mag;
}

struct Axis {
    double lo;
    double hi;
    double step;
};

Axis make_axis(double lo, double hi) {
    if (hi - lo <= 0.0) {
        const double pad = std::abs(lo) > 0.0 ? std::abs(lo) * 0.5 : 1.0;
        lo -= pad;
        hi += pad;
    }
    const double step = nice_step(hi - lo, 5);
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

std::string tick_label(double v, double step) {
    const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step)));
    std::string s = fmt::format("{:.{}f}", v, decimals);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

}  // namespace

std::string render_plot(const std::vector<PlotSeries>& series, const PlotAxes& axes) {
    if (series.empty()) throw std::invalid_argument("render_plot: no series");
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const PlotSeries& s : series) {
        if (s.x.size() != s.y.size()) {
            throw std::invalid_argument("render_plot: series '" + s.label + "' has mismatched x/y lengths");
        }
        if (s.x.size() < 2) throw std::invalid_argument("render_plot: series '" + s.label + "' needs 2 points");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                throw std::invalid_argument("render_plot: non-finite value in '" + s.label + "'");
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    const Axis ax = make_axis(xmin, xmax);
    const Axis ay = make_axis(ymin, ymax);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double y) { return kTop + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::string out;
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
        "viewBox=\"0 0 {0:.0f} {1:.0f}\">\n",
        kWidth, kHeight);
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!axes.title.empty()) {
        out += fmt::format("<text x=\"{:.2f}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
                           "text-anchor=\"middle\">{}</text>\n",
                           kLeft + pw / 2.0, escape_xml(axes.title));
    }

    out += "<g font-family=\"sans-serif\" font-size=\"11\" stroke-width=\"1\">\n";
    const int nx = static_cast<int>(std::lround((ax.hi - ax.lo) / ax.step));
    for (int i = 0; i <= nx; ++i) {
        const double v = ax.lo + i * ax.step;
        const double x = px(v);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#dddddd\"/>\n",
                           x, kTop, kTop + ph);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x,
                           kTop + ph + 16.0, tick_label(v, ax.step));
    }
    const int ny = static_cast<int>(std::lround((ay.hi - ay.lo) / ay.step));
    for (int i = 0; i <= ny; ++i) {
        const double v = ay.lo + i * ay.step;
        const double y = py(v);
        out += fmt::format("<line x1=\"{1:.2f}\" y1=\"{0:.2f}\" x2=\"{2:.2f}\" y2=\"{0:.2f}\" stroke=\"#dddddd\"/>\n",
                           y, kLeft, kLeft + pw);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6.0,
                           y + 4.0, tick_label(v, ay.step));
    }
    out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
                       "stroke=\"black\"/>\n",
                       kLeft, kTop, pw, ph);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n",
                       kLeft + pw / 2.0, kHeight - 16.0, escape_xml(axes.x_label));
    out += fmt::format("<text x=\"18\" y=\"{0:.2f}\" text-anchor=\"middle\" font-size=\"13\" "
                       "transform=\"rotate(-90 18 {0:.2f})\">{1}</text>\n",
                       kTop + ph / 2.0, escape_xml(axes.y_label));
    out += "</g>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const PlotSeries& s = series[k];
        out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"",
                           kPalette[k % kPalette.size()]);
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) out += ' ';
            out += fmt::format("{:.2f},{:.2f}", px(s.x[i]), py(s.y[i]));
        }
        out += "\"/>\n";
    }

    out += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double y = kTop + 10.0 + 18.0 * static_cast<double>(k);
        const double x = kLeft + pw + 12.0;
        out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
                           "stroke-width=\"2\"/>\n",
                           x, y, x + 20.0, y, kPalette[k % kPalette.size()]);
        out += fmt::format("<text class=\"legend-entry\" x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", x + 26.0,
                           y + 4.0, escape_xml(series[k].label));
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace tsa
