#pragma once

#include <string>
#include <vector>

namespace bandrg {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

/// Static line chart: axes, five ticks per axis, one polyline per series and a legend.
/// Non-finite points (and non-positive ones on a log axis) are skipped.
std::string render_svg(const PlotSpec& spec);

} // namespace bandrg
