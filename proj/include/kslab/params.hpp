#pragma once

#include <string>

namespace kslab {

/// Which finite-time blow-up regime the parameters fall into.
enum class Regime {
    BlowupCase1,  ///< kappa in (1, min{2, n/2}), any mu > 0
    BlowupCase2,  ///< kappa = 2, n >= 5, mu in (0, (n-4)/n)
    Unclassified, ///< simulation allowed, certification refused
};

std::string to_string(Regime r);

/// Model parameters for the aggregation system on the ball B_R(0) in R^n
/// with reaction lambda*u - mu*u^kappa and total mass m0, of which at least
/// m1 is requested inside the concentration ball.
struct ModelParameters {
    int n = 5;           ///< space dimension, >= 3
    double R = 1.0;      ///< domain radius
    double kappa = 2.0;  ///< dampening exponent, in (1, 2]
    double lambda = 0.0; ///< growth rate, >= 0
    double mu = 0.1;     ///< dampening strength, > 0
    double m0 = 1.0;     ///< total mass
    double m1 = 0.9;     ///< mass demanded inside the concentration ball, in (0, m0)

    double domain_volume() const; ///< |B_1| R^n
    double Rn() const;            ///< R^n
};

/// Checks the field invariants and classifies the regime. Throws
/// invalid_field_error when a field is out of range; parameters merely
/// outside both blow-up regimes classify as Unclassified.
Regime validate_parameters(const ModelParameters& p);

} // namespace kslab
