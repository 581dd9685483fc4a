#include "kslab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace kslab {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void write_svg_plot(const PlotSpec& spec, const std::filesystem::path& path) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : spec.series) {
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (spec.log_y && y <= 0.0) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            const double yy = spec.log_y ? std::log10(y) : y;
            ymin = std::min(ymin, yy);
            ymax = std::max(ymax, yy);
        }
    }
    const bool empty = !(xmin < xmax) && !(xmin == xmax && std::isfinite(xmin));
    if (empty) {
        xmin = 0; xmax = 1; ymin = 0; ymax = 1;
    }
    if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto X = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double y) {
        const double yy = spec.log_y ? std::log10(y) : y;
        return kTop + (1.0 - (yy - ymin) / (ymax - ymin)) * ph;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
        << "font-family=\"sans-serif\">" << spec.title << "</text>\n";
    // frame
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    // ticks
    for (int k = 0; k <= 5; ++k) {
        const double fx = xmin + (xmax - xmin) * k / 5.0;
        const double fy = ymin + (ymax - ymin) * k / 5.0;
        svg << "<text x=\"" << X(fx) << "\" y=\"" << kHeight - kBottom + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << fmt(fx)
            << "</text>\n";
        const double yv = spec.log_y ? std::pow(10.0, fy) : fy;
        svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << Y(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
            << (spec.log_y ? "1e" + fmt(fy) : fmt(fy)) << "</text>\n";
    }
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << spec.x_label
        << "</text>\n";
    svg << "<text x=\"16\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 16 "
        << kHeight / 2 << ")\">" << spec.y_label << "</text>\n";

    for (double vx : spec.v_lines) {
        if (vx < xmin || vx > xmax) continue;
        svg << "<line x1=\"" << X(vx) << "\" y1=\"" << kTop << "\" x2=\"" << X(vx) << "\" y2=\""
            << kTop + ph << "\" stroke=\"#b22222\" stroke-dasharray=\"6,4\"/>\n";
    }

    double legend_y = kTop + 14;
    for (const auto& s : spec.series) {
        std::ostringstream pts;
        bool open = false;
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y) || (spec.log_y && y <= 0.0)) continue;
            pts << (open ? " " : "") << fmt(X(x)) << "," << fmt(Y(y));
            open = true;
        }
        if (open) {
            svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
            if (s.dashed) svg << " stroke-dasharray=\"5,3\"";
            svg << " points=\"" << pts.str() << "\"/>\n";
        }
        svg << "<text x=\"" << kLeft + pw - 8 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << s.color
            << "\">" << s.label << "</text>\n";
        legend_y += 16;
    }
    svg << "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    f << svg.str();
}

} // namespace kslab
