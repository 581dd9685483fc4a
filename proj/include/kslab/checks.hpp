#pragma once

#include <string>
#include <vector>

#include "kslab/functionals.hpp"
#include "kslab/params.hpp"
#include "kslab/profile.hpp"
#include "kslab/wsolver.hpp"

namespace kslab {

/// One inequality verification, normalized to the form lhs >= rhs.
struct CheckResult {
    std::string name;
    double time = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; ///< lhs - rhs
    double tol = 0.0;
    bool pass = false;
};

/// Builds a result with margin/pass filled in.
CheckResult make_check(const std::string& name, double time, double lhs, double rhs, double tol);

/// Inequality tolerance used by the functional checks.
double inequality_tol(double lhs, double rhs);

/// w_s(s) <= w(s)/s <= w_s(0) at every interior node, to 1e-8 * w_s(0).
CheckResult check_ws_estimate(const WState& w);

/// Radial monotonicity: forward differences of u are <= 1e-8 * max u.
CheckResult check_monotone(const RadialProfile& u);

/// w nondecreasing in s, to 1e-12 * w(R^n).
CheckResult check_w_monotone(const WState& w);

/// total mass(t) <= e^{lambda t} m0 (1 + 1e-6) over a recorded series.
CheckResult check_mass_bound(const std::vector<std::pair<double, double>>& mass_series,
                             const ModelParameters& p);

/// For lambda = 0 the mass must additionally be nonincreasing.
CheckResult check_mass_monotone(const std::vector<std::pair<double, double>>& mass_series,
                                const ModelParameters& p);

/// i1 >= -C1 s0^{(3-gamma)/2 - 2/n} sqrt(i2) with the explicit constant
/// C1 = n^{3/2} (2 - 2/n - gamma) sqrt(B), B from the beta identity at
/// a = 1 - gamma - 4/n. Requires gamma in (0, 2 - 4/n).
CheckResult check_I1(const FunctionalSample& sample, const ModelParameters& p);

/// i2 >= C2 s0^{-(3-gamma)} phi^2 with C2 = n gamma (2-gamma)(3-gamma)/2.
CheckResult check_I2_lower(const FunctionalSample& sample, const ModelParameters& p);

/// i3 >= -C3 m0 s0^{(3-gamma)/2} sqrt(i2) with C3 = (n/|Omega|) e^lambda / sqrt(C2).
/// Valid for t < 1.
CheckResult check_I3(const FunctionalSample& sample, const ModelParameters& p);

/// kappa = 2, gamma in (1, 2): i4 >= -mu/(gamma-1) * i2.
CheckResult check_I4_case1(const FunctionalSample& sample, const ModelParameters& p);

/// kappa in (1, 2), gamma in (2(kappa-1)/kappa, 1), s0 < min(1, R^n):
/// |i4| <= C4 s0^{(2-kappa)/2} i2^{kappa/2}. The bound is stated on |i4|
/// because i4 <= 0 by definition.
CheckResult check_I4_case2(const FunctionalSample& sample, const ModelParameters& p);

/// Dispatches to the regime-appropriate i4 check.
CheckResult check_I4(const FunctionalSample& sample, const ModelParameters& p);

/// phi(s0, t) stays above the comparison level d3 once it starts above phi0.
CheckResult check_phi_level(const std::vector<std::pair<double, double>>& phi_series, double d3,
                            double phi0);

/// Finite-difference corroboration of phi_t >= d1 phi^2 - d2 along a series,
/// each sample tolerating 1e-2 |d1 phi^2|; lhs is the pass fraction, rhs the
/// required 0.95.
CheckResult check_phi_riccati(const std::vector<std::pair<double, double>>& phi_series, double d1,
                              double d2);

} // namespace kslab
