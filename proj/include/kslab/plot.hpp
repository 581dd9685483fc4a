#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kslab {

/// One polyline or reference line on a plot.
struct PlotSeries {
    std::string label;
    std::string color = "#1f6fb2";
    std::vector<std::pair<double, double>> points;
    bool dashed = false;
};

/// Minimal deterministic SVG line plot; log-scale axes map through log10.
struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<PlotSeries> series;
    std::vector<double> v_lines; ///< vertical reference positions (data units)
};

/// Writes a standalone SVG; empty series produce an empty-axes file.
void write_svg_plot(const PlotSpec& spec, const std::filesystem::path& path);

} // namespace kslab
