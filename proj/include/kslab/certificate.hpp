#pragma once

#include <string>

#include "kslab/params.hpp"

namespace kslab {

/// B with \int_0^{s0} s^a (s0 - s) ds = B s0^{a+2}; closed form 1/((a+1)(a+2)).
/// Requires a > -1.
double beta_constant(double a);

/// Moment exponent choice per regime, with the auxiliary epsilon used by the
/// Young splits. Case 1 takes the midpoint of (2(kappa-1)/kappa, min{2-4/n, 1})
/// and epsilon = mu; case 2 the midpoint of (1+mu, 2-4/n) with
/// epsilon = gamma - 1 - mu.
struct GammaSelection {
    double gamma = 0.0;
    double epsilon = 0.0;
    double lo = 0.0; ///< admissible interval, recorded in the certificate
    double hi = 0.0;
    Regime regime = Regime::Unclassified;
};

GammaSelection select_gamma(const ModelParameters& p);

// Explicit constants of the inequality suite. All are reproducible from the
// parameters alone; the formula identifiers below are echoed in the
// serialized certificate.
double constant_C0(const ModelParameters& p, double gamma); ///< initial moment lower bound
double constant_C1(int n, double gamma);                    ///< i1 against sqrt(i2)
double constant_C2(int n, double gamma);                    ///< i2 against phi^2
double constant_C3(const ModelParameters& p, double gamma); ///< i3 against sqrt(i2), t < 1
double constant_C4(const ModelParameters& p, double gamma); ///< |i4| against i2^{kappa/2}

/// The reduced constants of the comparison argument.
struct ConstantChain {
    Regime regime = Regime::Unclassified;
    double gamma = 0.0;
    double epsilon = 0.0;
    double a_i1 = 0.0, B_i1 = 0.0; ///< beta data entering C1
    double a_i4 = 0.0, B_i4 = 0.0; ///< beta data entering C4 (case 1 only)
    double C0 = 0.0, C1 = 0.0, C2 = 0.0, C3 = 0.0, C4 = 0.0, C4prime = 0.0;
    double c1 = 0.0; ///< epsilon / (2 (mu + epsilon))
    double c2 = 0.0; ///< (2 C1^2 + 2 C3^2 m0^2)(mu+eps)/(2 eps) + C4'
    double c3 = 0.0; ///< C2 c1
};

ConstantChain assemble_constants(const ModelParameters& p, const GammaSelection& sel);

/// Full certified record: for matching initial data the solution satisfies
/// phi_t >= d1 phi^2 - d2 with phi(0) >= phi0 >= d3 + 2/d1, which forces
/// T_max <= certified_bound <= 1/2.
struct BlowupCertificate {
    ModelParameters params;
    ConstantChain chain;
    double gamma_lo = 0.0, gamma_hi = 0.0;
    double s0 = 0.0;
    double s1 = 0.0; ///< s0 / 4
    double r1 = 0.0; ///< s1^{1/n}
    double d1 = 0.0, d2 = 0.0, d3 = 0.0;
    double phi0 = 0.0;
    double margin = 0.0; ///< phi0 - d3 - 2/d1 at the selected s0
    double certified_bound = 0.0;
};

/// Largest s0 in (0, min{1, R^n}) with C0 s0^{2-gamma} >= d3(s0) + 2/d1(s0),
/// located by a geometric scan (ratio 0.9) refined by bisection. Returns
/// (s0, feasibility margin).
std::pair<double, double> select_s0(const ConstantChain& chain, const ModelParameters& p);

/// Value of the comparison integral: 1/(d1 (phi0 - d3)), d3 = sqrt(d2/d1).
/// Guaranteed <= 1/2 under the precondition phi0 >= d3 + 2/d1.
double riccati_time_bound(double d1, double d2, double phi0);

/// Composes gamma selection, constant assembly and cutoff selection into a
/// self-contained certificate.
BlowupCertificate certify(const ModelParameters& p);

/// Deterministic serialization (stable key order, shortest-round-trip floats).
std::string certificate_to_json(const BlowupCertificate& cert);

} // namespace kslab
