#include "kslab/functionals.hpp"

#include <cmath>
#include <limits>

#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"

namespace kslab {

namespace {

void check_domain(const WState& w, double gamma, double s0) {
    if (!(gamma > 0.0 && gamma < 2.0)) throw domain_error("moment functional: gamma must lie in (0, 2)");
    if (!(s0 > 0.0 && s0 < w.grid.s_end()))
        throw domain_error("moment functional: s0 must lie in (0, R^n)");
}

} // namespace

double compute_phi(const WState& ws, double gamma, double s0) {
    check_domain(ws, gamma, s0);
    const auto& s = ws.grid.nodes;
    const auto& w = ws.w;
    KahanSum phi;
    for (std::size_t j = 0; j + 1 < s.size() && s[j] < s0; ++j) {
        const double a = s[j];
        const double b = std::min(s[j + 1], s0);
        const double d = (w[j + 1] - w[j]) / (s[j + 1] - s[j]);
        const double c0 = w[j] - d * a; // w(s) = c0 + d s on the cell; c0 = 0 on the first
        double cell = d * weighted_power_integral(1.0 - gamma, s0, a, b);
        if (j > 0) cell += c0 * weighted_power_integral(-gamma, s0, a, b);
        phi.add(cell);
    }
    return phi.value();
}

FunctionalSample compute_I_terms(const WState& ws, const ModelParameters& p, double gamma,
                                 double s0) {
    check_domain(ws, gamma, s0);
    if (ws.grid.n != p.n) throw invalid_field_error("compute_I_terms: dimension mismatch");
    const auto& s = ws.grid.nodes;
    const auto& w = ws.w;
    const double n = p.n;
    const double mean = ws.mean();
    const double c1 = 2.0 - 2.0 / n - gamma; // sign governs the i1 boundary term
    const bool i1_valid = gamma < 2.0 - 2.0 / n;
    const double react_coef = std::pow(n, p.kappa - 1.0) * p.mu;

    KahanSum phi, i1a, i1b, i2, i3, i4;
    double K = 0.0; // \int_0^{s_j} w_s^kappa
    for (std::size_t j = 0; j + 1 < s.size() && s[j] < s0; ++j) {
        const double a = s[j];
        const double b = std::min(s[j + 1], s0);
        const double d = (w[j + 1] - w[j]) / (s[j + 1] - s[j]);
        const double c0 = w[j] - d * a;
        const double dk = pow_kappa(d, p.kappa);
        const double K0 = K - dk * a; // K(s) = K0 + dk s on the cell

        const double wpi_m = weighted_power_integral(1.0 - gamma, s0, a, b);
        phi.add(d * wpi_m);
        i2.add(n * d * d * wpi_m);
        i3.add(-mean * d * wpi_m);
        i4.add(-react_coef * dk * wpi_m);
        if (j > 0) {
            const double wpi_0 = weighted_power_integral(-gamma, s0, a, b);
            phi.add(c0 * wpi_0);
            i2.add(n * d * c0 * wpi_0);
            i4.add(-react_coef * K0 * wpi_0);
        }
        if (i1_valid) {
            i1a.add(d * weighted_power_integral(1.0 - 2.0 / n - gamma, s0, a, b));
            i1b.add(d * power_integral(2.0 - 2.0 / n - gamma, a, b));
        }
        K += dk * (s[j + 1] - s[j]);
    }

    FunctionalSample out;
    out.t = ws.t;
    out.gamma = gamma;
    out.s0 = s0;
    out.mean = mean;
    out.phi = phi.value();
    out.i1 = i1_valid ? n * n * (-c1 * i1a.value() + i1b.value())
                      : std::numeric_limits<double>::quiet_NaN();
    out.i2 = i2.value();
    out.i3 = i3.value();
    out.i4 = i4.value();
    out.lambda_term = p.lambda * out.phi;
    return out;
}

} // namespace kslab
