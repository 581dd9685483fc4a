#include "kslab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kslab/certificate.hpp"
#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"

namespace kslab {

CheckResult make_check(const std::string& name, double time, double lhs, double rhs, double tol) {
    CheckResult r;
    r.name = name;
    r.time = time;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = lhs - rhs;
    r.tol = tol;
    r.pass = r.margin >= -tol;
    return r;
}

double inequality_tol(double lhs, double rhs) {
    return 1e-6 * (std::abs(lhs) + std::abs(rhs) + kMachineFloor);
}

CheckResult check_ws_estimate(const WState& ws) {
    const auto& s = ws.grid.nodes;
    const auto& w = ws.w;
    const double ws0 = ws.ws0();
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j + 1 < s.size(); ++j) {
        const double ratio = w[j] / s[j];
        const double slope_right = (w[j + 1] - w[j]) / (s[j + 1] - s[j]);
        worst = std::min(worst, ratio - slope_right); // w_s <= w/s
        worst = std::min(worst, ws0 - ratio);         // w/s <= w_s(0)
    }
    return make_check("ws_estimate", ws.t, worst, 0.0, 1e-8 * std::abs(ws0));
}

CheckResult check_monotone(const RadialProfile& u) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < u.values.size(); ++j)
        worst = std::min(worst, u.values[j] - u.values[j + 1]);
    return make_check("u_monotone", 0.0, worst, 0.0, 1e-8 * std::abs(u.max_value()));
}

CheckResult check_w_monotone(const WState& ws) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < ws.w.size(); ++j)
        worst = std::min(worst, ws.w[j + 1] - ws.w[j]);
    return make_check("w_monotone", ws.t, worst, 0.0, 1e-12 * std::abs(ws.w_end()));
}

CheckResult check_mass_bound(const std::vector<std::pair<double, double>>& mass_series,
                             const ModelParameters& p) {
    double worst = std::numeric_limits<double>::infinity();
    double t_worst = 0.0;
    for (const auto& [t, m] : mass_series) {
        const double envelope = std::exp(p.lambda * t) * p.m0 * (1.0 + 1e-6);
        if (envelope - m < worst) {
            worst = envelope - m;
            t_worst = t;
        }
    }
    return make_check("mass_bound", t_worst, worst, 0.0, 0.0);
}

CheckResult check_mass_monotone(const std::vector<std::pair<double, double>>& mass_series,
                                const ModelParameters& p) {
    if (p.lambda != 0.0)
        throw precondition_error("mass monotonicity only applies for lambda = 0");
    double worst = std::numeric_limits<double>::infinity();
    double t_worst = 0.0;
    for (std::size_t k = 0; k + 1 < mass_series.size(); ++k) {
        const double drop = mass_series[k].second - mass_series[k + 1].second;
        if (drop < worst) {
            worst = drop;
            t_worst = mass_series[k + 1].first;
        }
    }
    return make_check("mass_monotone", t_worst, worst, 0.0, 1e-13 * p.m0);
}

CheckResult check_I1(const FunctionalSample& f, const ModelParameters& p) {
    if (!(f.gamma > 0.0 && f.gamma < 2.0 - 4.0 / p.n))
        throw precondition_error("check_I1: gamma must lie in (0, 2 - 4/n)");
    const double C1 = constant_C1(p.n, f.gamma);
    const double rhs = -C1 * std::pow(f.s0, 0.5 * (3.0 - f.gamma) - 2.0 / p.n) * std::sqrt(f.i2);
    return make_check("I1_lower", f.t, f.i1, rhs, inequality_tol(f.i1, rhs));
}

CheckResult check_I2_lower(const FunctionalSample& f, const ModelParameters& p) {
    if (!(f.gamma > 0.0 && f.gamma < 2.0))
        throw precondition_error("check_I2_lower: gamma must lie in (0, 2)");
    const double C2 = constant_C2(p.n, f.gamma);
    const double rhs = C2 * std::pow(f.s0, -(3.0 - f.gamma)) * f.phi * f.phi;
    return make_check("I2_lower", f.t, f.i2, rhs, inequality_tol(f.i2, rhs));
}

CheckResult check_I3(const FunctionalSample& f, const ModelParameters& p) {
    if (!(f.t < 1.0)) throw precondition_error("check_I3: only valid for t < 1");
    if (!(f.gamma > 0.0 && f.gamma < 2.0))
        throw precondition_error("check_I3: gamma must lie in (0, 2)");
    const double C3 = constant_C3(p, f.gamma);
    const double rhs = -C3 * p.m0 * std::pow(f.s0, 0.5 * (3.0 - f.gamma)) * std::sqrt(f.i2);
    return make_check("I3_lower", f.t, f.i3, rhs, inequality_tol(f.i3, rhs));
}

CheckResult check_I4_case1(const FunctionalSample& f, const ModelParameters& p) {
    if (p.kappa != 2.0) throw precondition_error("check_I4_case1: requires kappa = 2");
    if (!(f.gamma > 1.0 && f.gamma < 2.0))
        throw precondition_error("check_I4_case1: requires gamma in (1, 2)");
    const double rhs = -p.mu / (f.gamma - 1.0) * f.i2;
    return make_check("I4_case1", f.t, f.i4, rhs, inequality_tol(f.i4, rhs));
}

CheckResult check_I4_case2(const FunctionalSample& f, const ModelParameters& p) {
    if (!(p.kappa > 1.0 && p.kappa < 2.0))
        throw precondition_error("check_I4_case2: requires kappa in (1, 2)");
    const double glo = 2.0 * (p.kappa - 1.0) / p.kappa;
    if (!(f.gamma > glo && f.gamma < 1.0))
        throw precondition_error("check_I4_case2: gamma outside (2(kappa-1)/kappa, 1)");
    if (!(f.s0 < std::min(1.0, p.Rn())))
        throw precondition_error("check_I4_case2: requires s0 < min(1, R^n)");
    const double C4 = constant_C4(p, f.gamma);
    const double lhs =
        C4 * std::pow(f.s0, 0.5 * (2.0 - p.kappa)) * std::pow(f.i2, 0.5 * p.kappa);
    const double rhs = std::abs(f.i4);
    return make_check("I4_case2", f.t, lhs, rhs, inequality_tol(lhs, rhs));
}

CheckResult check_I4(const FunctionalSample& f, const ModelParameters& p) {
    return p.kappa == 2.0 ? check_I4_case1(f, p) : check_I4_case2(f, p);
}

CheckResult check_phi_level(const std::vector<std::pair<double, double>>& phi_series, double d3,
                            double phi0) {
    double worst = std::numeric_limits<double>::infinity();
    double t_worst = 0.0;
    if (!phi_series.empty() && phi_series.front().second < phi0)
        return make_check("phi_above_d3", phi_series.front().first,
                          phi_series.front().second, phi0, 0.0);
    for (const auto& [t, phi] : phi_series) {
        if (phi - d3 < worst) {
            worst = phi - d3;
            t_worst = t;
        }
    }
    return make_check("phi_above_d3", t_worst, worst, 0.0, 1e-9 * std::abs(d3));
}

CheckResult check_phi_riccati(const std::vector<std::pair<double, double>>& phi_series, double d1,
                              double d2) {
    std::size_t pass = 0, total = 0;
    for (std::size_t k = 0; k + 1 < phi_series.size(); ++k) {
        const auto& [t0, p0] = phi_series[k];
        const auto& [t1, p1] = phi_series[k + 1];
        if (!(t1 > t0)) continue;
        const double fd = (p1 - p0) / (t1 - t0);
        const double mid = 0.5 * (p0 + p1);
        const double rhs = d1 * mid * mid - d2;
        ++total;
        if (fd >= rhs - 1e-2 * std::abs(d1 * mid * mid)) ++pass;
    }
    const double frac = total ? static_cast<double>(pass) / total : 1.0;
    return make_check("phi_riccati_fd", 0.0, frac, 0.95, 0.0);
}

} // namespace kslab
