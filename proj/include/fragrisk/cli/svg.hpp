#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fragrisk::cli {

struct ChartSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ChartSeries> series;
};

/// Static SVG line chart. Output is a pure function of the chart.
std::string render_svg(const LineChart& chart);

}  // namespace fragrisk::cli
