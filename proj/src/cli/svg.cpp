#include "fragrisk/cli/svg.hpp"

#include "fragrisk/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace fragrisk::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c",
                                             "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string coord(double v) { return format_number(std::round(v * 100.0) / 100.0, 8); }

}  // namespace

std::string render_svg(const LineChart& chart) {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& s : chart.series) {
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = ymin = 0.0;
        xmax = ymax = 1.0;
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << coord(kLeft) << "\" y=\"24\" font-size=\"14\">" << escape(chart.title)
        << "</text>\n";
    out << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\""
        << coord(plot_w) << "\" height=\"" << coord(plot_h)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        out << "<text x=\"" << coord(px(fx)) << "\" y=\"" << coord(kTop + plot_h + 16)
            << "\" text-anchor=\"middle\">" << format_number(fx, 4) << "</text>\n";
        out << "<text x=\"" << coord(kLeft - 6) << "\" y=\"" << coord(py(fy) + 4)
            << "\" text-anchor=\"end\">" << format_number(fy, 4) << "</text>\n";
    }
    out << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"" << coord(kHeight - 10)
        << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
    out << "<text x=\"16\" y=\"" << coord(kTop + plot_h / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << coord(kTop + plot_h / 2)
        << ")\">" << escape(chart.y_label) << "</text>\n";

    for (std::size_t i = 0; i < chart.series.size(); ++i) {
        const auto& s = chart.series[i];
        const char* color = kColors[i % kColors.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            out << (first ? "" : " ") << coord(px(x)) << ',' << coord(py(y));
            first = false;
        }
        out << "\"/>\n";
        const double ly = kTop + 16.0 + 18.0 * static_cast<double>(i);
        out << "<line x1=\"" << coord(kLeft + plot_w + 12) << "\" y1=\"" << coord(ly - 4)
            << "\" x2=\"" << coord(kLeft + plot_w + 32) << "\" y2=\"" << coord(ly - 4)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << coord(kLeft + plot_w + 38) << "\" y=\"" << coord(ly) << "\">"
            << escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace fragrisk::cli
