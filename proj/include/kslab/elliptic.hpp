#pragma once

#include <vector>

#include "kslab/profile.hpp"

namespace kslab {

/// Radial chemical gradient data at cell faces. `vr` stores the inward
/// aggregation speed -dv/dr, i.e.
///   vr(r) = r^{1-n} \int_0^r rho^{n-1} (u(rho) - mean) drho,
/// which is nonnegative on (0, R) whenever u is radially nonincreasing.
/// vr(0) = 0 by symmetry and vr(R) = 0 by the mass balance.
struct GradientProfile {
    RadialGrid grid;
    std::vector<double> vr; ///< one entry per face, size cells()+1
};

/// Solves 0 = Laplace(v) - mean + u for the gradient, quasi-statically from
/// the current density. The cumulative shell integral runs left to right with
/// compensated summation; the (u - mean) cancellation at r = R is exact up to
/// rounding.
GradientProfile compute_vr(const RadialProfile& u);

} // namespace kslab
