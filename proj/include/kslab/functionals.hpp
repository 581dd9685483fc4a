#pragma once

#include "kslab/params.hpp"
#include "kslab/wsolver.hpp"

namespace kslab {

/// The moment functional and its production terms at one time instant:
///   phi      = \int_0^{s0} s^{-gamma} (s0 - s) w ds
///   i1       = n^2 \int s^{2-2/n-gamma} (s0 - s) w_ss   (integrated by parts)
///   i2       = n \int s^{-gamma} (s0 - s) w w_s
///   i3       = -mean \int s^{1-gamma} (s0 - s) w_s
///   i4       = -n^{kappa-1} mu \int s^{-gamma} (s0 - s) K(s),  K = \int_0^s w_s^kappa
///   lambda_term = lambda * phi
/// so that phi_t = i1 + i2 + i3 + lambda_term + i4 along solutions.
struct FunctionalSample {
    double t = 0.0;
    double gamma = 0.0;
    double s0 = 0.0;
    double phi = 0.0;
    double i1 = 0.0;
    double i2 = 0.0;
    double i3 = 0.0;
    double i4 = 0.0;
    double lambda_term = 0.0;
    double mean = 0.0;
};

/// Weighted moment of w. Quadrature is exact for the piecewise-linear node
/// representation; on the first cell w = w_s(0+) s, which keeps the singular
/// weight integrable for every gamma < 2.
double compute_phi(const WState& w, double gamma, double s0);

/// All functional terms in one sweep. i1 uses the integrated-by-parts form
///   n^2 [ -(2-2/n-gamma) \int s^{1-2/n-gamma}(s0-s) w_s + \int s^{2-2/n-gamma} w_s ],
/// avoiding a discrete second derivative against the singular weight; it is
/// only defined for gamma < 2 - 2/n (NaN otherwise). The inner cumulative
/// kappa-integral is shared across s.
FunctionalSample compute_I_terms(const WState& w, const ModelParameters& p, double gamma,
                                 double s0);

} // namespace kslab
