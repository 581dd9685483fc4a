#pragma once

#include <vector>

#include "kslab/grid.hpp"

namespace kslab {

/// Cell-averaged radial scalar on a RadialGrid.
struct RadialProfile {
    RadialGrid grid;
    std::vector<double> values; ///< one entry per cell

    double max_value() const;
    double min_value() const;
};

/// Mass inside the ball of radius r: n|B_1| \int_0^r rho^{n-1} u drho,
/// evaluated exactly for the piecewise-constant cell representation. This is
/// the conserved quantity of the finite-volume solver.
double partial_mass(const RadialProfile& u, double r);

/// Total mass over the domain.
double total_mass(const RadialProfile& u);

/// Spatial mean of u: total mass / |B_1| R^n.
double compute_mean(const RadialProfile& u);

} // namespace kslab
