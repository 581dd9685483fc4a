#pragma once

#include "kslab/params.hpp"
#include "kslab/profile.hpp"

namespace kslab {

/// Recipe for an admissible initial datum: positive, radially nonincreasing,
/// C^1, with total mass m0 and at least m1 inside B_{r1}.
struct InitialDatumSpec {
    double r1 = 0.25;       ///< concentration radius, in (0, R]
    int smoothness = 2;     ///< transition smoothstep order, >= 1
    double delta = -1.0;    ///< background floor; < 0 selects 1e-6 * m0/|Omega|
};

/// Smoothed plateau: constant A on [0, 0.8 r1], polynomial descent on
/// [0.8 r1, 1.05 r1], floor delta beyond. A is fixed by the total-mass
/// constraint; the construction then has to deliver mass >= m1 inside B_{r1}
/// or it throws infeasible_datum_error. r1 = R degenerates to the constant
/// profile m0/|Omega|. Cell averages are exact (per-piece Gauss quadrature),
/// so total_mass() reproduces m0 to rounding.
RadialProfile make_initial_datum(const ModelParameters& p, const InitialDatumSpec& spec,
                                 const RadialGrid& grid);

/// Pointwise evaluation of the same profile (used by tests and quadrature).
double initial_datum_value(const ModelParameters& p, const InitialDatumSpec& spec, double plateau,
                           double r);

/// The plateau height the generator would use (exposed for diagnostics).
double solve_plateau_height(const ModelParameters& p, const InitialDatumSpec& spec);

} // namespace kslab
