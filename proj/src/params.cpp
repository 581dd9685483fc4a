#include "kslab/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"

namespace kslab {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::BlowupCase1: return "BlowupCase1";
        case Regime::BlowupCase2: return "BlowupCase2";
        default: return "Unclassified";
    }
}

double ModelParameters::domain_volume() const { return unit_ball_volume(n) * std::pow(R, n); }

double ModelParameters::Rn() const { return std::pow(R, n); }

Regime validate_parameters(const ModelParameters& p) {
    std::ostringstream bad;
    if (p.n < 3) bad << "n must be >= 3 (got " << p.n << ")";
    else if (!(p.R > 0.0) || !std::isfinite(p.R)) bad << "R must be positive";
    else if (!(p.kappa > 1.0)) bad << "kappa must exceed 1";
    else if (!(p.lambda >= 0.0)) bad << "lambda must be >= 0";
    else if (!(p.mu > 0.0)) bad << "mu must be positive";
    else if (!(p.m0 > 0.0)) bad << "m0 must be positive";
    else if (!(p.m1 > 0.0 && p.m1 < p.m0)) bad << "m1 must lie in (0, m0)";
    if (!bad.str().empty()) throw invalid_field_error("invalid parameter: " + bad.str());

    const double half_n = 0.5 * static_cast<double>(p.n);
    if (p.kappa > 1.0 && p.kappa < std::min(2.0, half_n)) return Regime::BlowupCase1;
    if (p.kappa == 2.0 && p.n >= 5 && p.mu < (p.n - 4.0) / p.n) return Regime::BlowupCase2;
    return Regime::Unclassified;
}

} // namespace kslab
