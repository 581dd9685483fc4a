#include "kslab/certificate.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"

namespace kslab {

double beta_constant(double a) {
    if (!(a > -1.0)) throw domain_error("beta_constant: requires a > -1");
    return 1.0 / ((a + 1.0) * (a + 2.0));
}

GammaSelection select_gamma(const ModelParameters& p) {
    GammaSelection sel;
    sel.regime = validate_parameters(p);
    if (sel.regime == Regime::BlowupCase1) {
        sel.lo = 2.0 * (p.kappa - 1.0) / p.kappa;
        sel.hi = std::min(2.0 - 4.0 / p.n, 1.0);
        sel.gamma = 0.5 * (sel.lo + sel.hi);
        sel.epsilon = p.mu; // arbitrary fixed choice, enters only via mu/(mu+eps)
    } else if (sel.regime == Regime::BlowupCase2) {
        sel.lo = 1.0 + p.mu;
        sel.hi = 2.0 - 4.0 / p.n;
        sel.gamma = 0.5 * (sel.lo + sel.hi);
        sel.epsilon = sel.gamma - 1.0 - p.mu;
    } else {
        throw empty_interval_error("select_gamma: parameters lie outside both blow-up regimes");
    }
    if (!(sel.lo < sel.hi))
        throw empty_interval_error("select_gamma: empty admissible gamma interval");
    return sel;
}

double constant_C0(const ModelParameters& p, double gamma) {
    // phi(s0, 0) >= w(s1, 0) \int_{s1}^{s0} s^{-gamma}(s0-s) ds with
    // w(s1, 0) >= m1/(n |B_1|) and the substitution s = s0 sigma.
    const double integral = weighted_power_integral(-gamma, 1.0, 0.25, 1.0);
    return p.m1 / (p.n * unit_ball_volume(p.n)) * integral;
}

double constant_C1(int n, double gamma) {
    const double a = 1.0 - gamma - 4.0 / n;
    const double B = beta_constant(a);
    return std::pow(static_cast<double>(n), 1.5) * (2.0 - 2.0 / n - gamma) * std::sqrt(B);
}

double constant_C2(int n, double gamma) {
    return 0.5 * n * gamma * (2.0 - gamma) * (3.0 - gamma);
}

double constant_C3(const ModelParameters& p, double gamma) {
    return p.n / p.domain_volume() * std::exp(p.lambda) / std::sqrt(constant_C2(p.n, gamma));
}

double constant_C4(const ModelParameters& p, double gamma) {
    const double a = (gamma - 1.0) * p.kappa / (2.0 - p.kappa);
    const double B = beta_constant(a);
    return std::pow(static_cast<double>(p.n), p.kappa - 1.0) * p.mu / (1.0 - gamma) *
           std::pow(p.R, p.n * (1.0 - gamma)) * std::pow(B, 0.5 * (2.0 - p.kappa)) *
           std::pow(static_cast<double>(p.n), -0.5 * p.kappa);
}

ConstantChain assemble_constants(const ModelParameters& p, const GammaSelection& sel) {
    ConstantChain c;
    c.regime = sel.regime;
    c.gamma = sel.gamma;
    c.epsilon = sel.epsilon;
    c.a_i1 = 1.0 - sel.gamma - 4.0 / p.n;
    c.B_i1 = beta_constant(c.a_i1);
    c.C0 = constant_C0(p, sel.gamma);
    c.C1 = constant_C1(p.n, sel.gamma);
    c.C2 = constant_C2(p.n, sel.gamma);
    c.C3 = constant_C3(p, sel.gamma);
    if (sel.regime == Regime::BlowupCase1) {
        c.a_i4 = (sel.gamma - 1.0) * p.kappa / (2.0 - p.kappa);
        c.B_i4 = beta_constant(c.a_i4);
        c.C4 = constant_C4(p, sel.gamma);
        // Young split with exponents 2/kappa, 2/(2-kappa):
        // C4 s0^{(2-k)/2} I2^{k/2} <= mu/(mu+eps) I2 + C4' s0.
        const double theta = std::pow(2.0 * p.mu / (p.kappa * (p.mu + sel.epsilon)), 0.5 * p.kappa);
        c.C4prime = 0.5 * (2.0 - p.kappa) * std::pow(c.C4 / theta, 2.0 / (2.0 - p.kappa));
    } else {
        c.a_i4 = 0.0;
        c.B_i4 = 0.0;
        c.C4 = 0.0;
        c.C4prime = 0.0;
    }
    c.c1 = sel.epsilon / (2.0 * (p.mu + sel.epsilon));
    c.c2 = (2.0 * c.C1 * c.C1 + 2.0 * c.C3 * c.C3 * p.m0 * p.m0) * (p.mu + sel.epsilon) /
               (2.0 * sel.epsilon) +
           c.C4prime;
    c.c3 = c.C2 * c.c1;
    return c;
}

namespace {

double feasibility_gap(const ConstantChain& c, double s0) {
    const double d1 = c.c3 * std::pow(s0, -(3.0 - c.gamma));
    const double d2 = c.c2 * s0;
    const double d3 = std::sqrt(d2 / d1);
    return c.C0 * std::pow(s0, 2.0 - c.gamma) - d3 - 2.0 / d1;
}

} // namespace

std::pair<double, double> select_s0(const ConstantChain& chain, const ModelParameters& p) {
    const double s_max = std::min(1.0, p.Rn());
    // The normalized criterion C0 - sqrt(c2/c3) s0^{gamma/2} - (2/c3) s0^{1-gamma+...}
    // is strictly decreasing in s0, so the feasible set is an interval (0, s*].
    double hi = s_max;           // infeasible (or the open endpoint)
    double lo = 0.9 * s_max;     // scan downward for a feasible point
    bool found = false;
    while (lo >= 1e-300) {
        if (feasibility_gap(chain, lo) >= 0.0) {
            found = true;
            break;
        }
        hi = lo;
        lo *= 0.9;
    }
    if (!found)
        throw infeasibility_error("select_s0: no feasible moment cutoff above 1e-300");
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasibility_gap(chain, mid) >= 0.0) lo = mid;
        else hi = mid;
    }
    return {lo, feasibility_gap(chain, lo)};
}

double riccati_time_bound(double d1, double d2, double phi0) {
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw precondition_error("riccati_time_bound: d1, d2 must be positive");
    const double d3 = std::sqrt(d2 / d1);
    if (phi0 < d3 + 2.0 / d1)
        throw precondition_error("riccati_time_bound: phi0 below the comparison threshold");
    return 1.0 / (d1 * (phi0 - d3));
}

BlowupCertificate certify(const ModelParameters& p) {
    BlowupCertificate cert;
    cert.params = p;
    const GammaSelection sel = select_gamma(p);
    cert.gamma_lo = sel.lo;
    cert.gamma_hi = sel.hi;
    cert.chain = assemble_constants(p, sel);
    const auto [s0, margin] = select_s0(cert.chain, p);
    cert.s0 = s0;
    cert.margin = margin;
    cert.s1 = 0.25 * s0;
    cert.r1 = std::pow(cert.s1, 1.0 / p.n);
    cert.d1 = cert.chain.c3 * std::pow(s0, -(3.0 - sel.gamma));
    cert.d2 = cert.chain.c2 * s0;
    cert.d3 = std::sqrt(cert.d2 / cert.d1);
    cert.phi0 = cert.chain.C0 * std::pow(s0, 2.0 - sel.gamma);
    cert.certified_bound = riccati_time_bound(cert.d1, cert.d2, cert.phi0);
    return cert;
}

std::string certificate_to_json(const BlowupCertificate& cert) {
    nlohmann::ordered_json j;
    j["kind"] = "blowup-certificate";
    j["parameters"] = {
        {"n", cert.params.n},      {"R", cert.params.R},   {"kappa", cert.params.kappa},
        {"lambda", cert.params.lambda}, {"mu", cert.params.mu}, {"m0", cert.params.m0},
        {"m1", cert.params.m1},
    };
    j["regime"] = to_string(cert.chain.regime);
    j["gamma"] = {{"value", cert.chain.gamma},
                  {"interval", {cert.gamma_lo, cert.gamma_hi}},
                  {"rule", "interval midpoint"}};
    j["epsilon"] = cert.chain.epsilon;
    nlohmann::ordered_json consts;
    consts["C0"] = {{"value", cert.chain.C0},
                    {"formula", "m1/(n|B1|) * int_{1/4}^1 sigma^-gamma (1-sigma) dsigma"}};
    consts["C1"] = {{"value", cert.chain.C1},
                    {"formula", "n^(3/2) (2-2/n-gamma) sqrt(B)"},
                    {"beta_a", cert.chain.a_i1},
                    {"beta_B", cert.chain.B_i1}};
    consts["C2"] = {{"value", cert.chain.C2}, {"formula", "n gamma (2-gamma)(3-gamma)/2"}};
    consts["C3"] = {{"value", cert.chain.C3}, {"formula", "(n/|Omega|) e^lambda / sqrt(C2)"}};
    consts["C4"] = {{"value", cert.chain.C4},
                    {"formula", "n^(kappa-1) mu/(1-gamma) R^(n(1-gamma)) B^((2-kappa)/2) n^(-kappa/2)"},
                    {"beta_a", cert.chain.a_i4},
                    {"beta_B", cert.chain.B_i4}};
    consts["C4prime"] = {{"value", cert.chain.C4prime},
                         {"formula", "Young split of the i4 bound; 0 in case 2"}};
    consts["c1"] = {{"value", cert.chain.c1}, {"formula", "epsilon/(2(mu+epsilon))"}};
    consts["c2"] = {{"value", cert.chain.c2},
                    {"formula", "(2 C1^2 + 2 C3^2 m0^2)(mu+epsilon)/(2 epsilon) + C4prime"}};
    consts["c3"] = {{"value", cert.chain.c3}, {"formula", "C2 c1"}};
    j["constants"] = consts;
    j["cutoff"] = {{"s0", cert.s0}, {"s1", cert.s1}, {"r1", cert.r1},
                   {"rule", "largest feasible s0; s1 = s0/4; r1 = s1^(1/n)"}};
    j["comparison"] = {{"d1", cert.d1}, {"d2", cert.d2}, {"d3", cert.d3},
                       {"phi0", cert.phi0}, {"feasibility_margin", cert.margin}};
    j["certified_bound"] = cert.certified_bound;
    return j.dump(2) + "\n";
}

} // namespace kslab
