#include "kslab/grid.hpp"

#include <cmath>
#include <sstream>

#include "kslab/errors.hpp"

namespace kslab {

namespace {

void require_grid(bool ok, const std::string& msg) {
    if (!ok) throw invalid_field_error("grid: " + msg);
}

} // namespace

double RadialGrid::cell_volume(std::size_t j) const {
    return (std::pow(nodes[j + 1], n) - std::pow(nodes[j], n)) / static_cast<double>(n);
}

RadialGrid RadialGrid::uniform(int n, double R, std::size_t cells) {
    require_grid(n >= 1, "dimension must be positive");
    require_grid(R > 0.0, "radius must be positive");
    require_grid(cells >= 16, "at least 16 cells required");
    RadialGrid g;
    g.n = n;
    g.grading = "uniform";
    g.nodes.resize(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i)
        g.nodes[i] = R * static_cast<double>(i) / static_cast<double>(cells);
    g.nodes.front() = 0.0;
    g.nodes.back() = R;
    return g;
}

RadialGrid RadialGrid::geometric(int n, double R, std::size_t cells, double ratio) {
    require_grid(n >= 1, "dimension must be positive");
    require_grid(R > 0.0, "radius must be positive");
    require_grid(cells >= 16, "at least 16 cells required");
    require_grid(ratio > 0.0 && ratio <= 1.0, "grading ratio must lie in (0, 1]");
    if (ratio == 1.0) return uniform(n, R, cells);
    RadialGrid g;
    g.n = n;
    {
        std::ostringstream tag;
        tag << "geometric(" << ratio << ")";
        g.grading = tag.str();
    }
    // Widths h_j = h0 * q^j with q^(cells-1) = 1/ratio; smallest cell at 0.
    const double q = std::pow(1.0 / ratio, 1.0 / static_cast<double>(cells - 1));
    const double h0 = R * (q - 1.0) / (std::pow(q, static_cast<double>(cells)) - 1.0);
    g.nodes.resize(cells + 1);
    g.nodes[0] = 0.0;
    double h = h0;
    for (std::size_t j = 0; j < cells; ++j) {
        g.nodes[j + 1] = g.nodes[j] + h;
        h *= q;
    }
    // Absorb rounding drift into the last node.
    g.nodes.back() = R;
    return g;
}

SGrid SGrid::uniform(int n, double Rn, std::size_t intervals) {
    require_grid(n >= 1, "dimension must be positive");
    require_grid(Rn > 0.0, "s-extent must be positive");
    require_grid(intervals >= 16, "at least 16 intervals required");
    SGrid g;
    g.n = n;
    g.grading = "uniform";
    g.nodes.resize(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i)
        g.nodes[i] = Rn * static_cast<double>(i) / static_cast<double>(intervals);
    g.nodes.front() = 0.0;
    g.nodes.back() = Rn;
    return g;
}

SGrid SGrid::power(int n, double Rn, std::size_t intervals, double exponent) {
    require_grid(exponent >= 1.0, "power grading exponent must be >= 1");
    SGrid g = uniform(n, Rn, intervals);
    for (std::size_t i = 0; i <= intervals; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(intervals);
        g.nodes[i] = Rn * std::pow(x, exponent);
    }
    g.nodes.front() = 0.0;
    g.nodes.back() = Rn;
    std::ostringstream tag;
    tag << "power(" << exponent << ")";
    g.grading = tag.str();
    return g;
}

SGrid SGrid::from_radial(const RadialGrid& rg) {
    SGrid g;
    g.n = rg.n;
    g.grading = "radial-image(" + rg.grading + ")";
    g.nodes.resize(rg.nodes.size());
    for (std::size_t i = 0; i < rg.nodes.size(); ++i) g.nodes[i] = std::pow(rg.nodes[i], rg.n);
    g.nodes.front() = 0.0;
    return g;
}

} // namespace kslab
