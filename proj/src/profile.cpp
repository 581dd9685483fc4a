#include "kslab/profile.hpp"

#include <algorithm>
#include <cmath>

#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"

namespace kslab {

double RadialProfile::max_value() const {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double RadialProfile::min_value() const {
    return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

double partial_mass(const RadialProfile& u, double r) {
    const auto& g = u.grid;
    if (r < 0.0 || r > g.R() * (1.0 + 1e-12)) throw domain_error("partial_mass: radius outside [0, R]");
    r = std::min(r, g.R());
    KahanSum acc;
    const int n = g.n;
    for (std::size_t j = 0; j < g.cells(); ++j) {
        const double lo = g.nodes[j];
        if (lo >= r) break;
        const double hi = std::min(g.nodes[j + 1], r);
        acc.add(u.values[j] * (std::pow(hi, n) - std::pow(lo, n)) / static_cast<double>(n));
    }
    return acc.value() * static_cast<double>(n) * unit_ball_volume(n);
}

double total_mass(const RadialProfile& u) { return partial_mass(u, u.grid.R()); }

double compute_mean(const RadialProfile& u) {
    const double vol = unit_ball_volume(u.grid.n) * std::pow(u.grid.R(), u.grid.n);
    return total_mass(u) / vol;
}

} // namespace kslab
