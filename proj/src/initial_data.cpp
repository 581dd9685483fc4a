#include "kslab/initial_data.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"

namespace kslab {

namespace {

// 12-point Gauss-Legendre on [-1, 1]; exact to polynomial degree 23, which
// covers rho^{n-1} times the transition polynomial for every supported order.
constexpr std::array<double, 12> kGlNodes = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047, -0.5873179542866175,
    -0.3678314989981802, -0.1252334085114689, 0.1252334085114689,  0.3678314989981802,
    0.5873179542866175,  0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr std::array<double, 12> kGlWeights = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462, 0.2031674267230659,
    0.2334925365383548, 0.2491470458134028, 0.2491470458134028, 0.2334925365383548,
    0.2031674267230659, 0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

struct Shape {
    double a0, a1, b; // plateau end, transition end, r1 (unused beyond a1)
    int order;
    bool constant;
    // shape(r) in [0, 1]: 1 on the plateau, smooth descent, 0 beyond.
    double operator()(double r) const {
        if (constant) return 1.0;
        if (r <= a0) return 1.0;
        if (r >= a1) return 0.0;
        const double xi = (r - a0) / (a1 - a0);
        return 1.0 - smoothstep(order, xi);
    }
};

Shape make_shape(const ModelParameters& p, const InitialDatumSpec& spec) {
    Shape s;
    s.order = spec.smoothness;
    s.b = spec.r1;
    s.constant = spec.r1 >= p.R;
    s.a0 = 0.8 * spec.r1;
    s.a1 = std::min(1.05 * spec.r1, p.R);
    return s;
}

// \int_lo^hi rho^{n-1} shape(rho) drho, split at the shape breakpoints so each
// Gauss panel sees a smooth integrand.
double shape_shell_integral(const Shape& s, int n, double lo, double hi) {
    if (s.constant) return (std::pow(hi, n) - std::pow(lo, n)) / n;
    double pts[4] = {lo, std::clamp(s.a0, lo, hi), std::clamp(s.a1, lo, hi), hi};
    KahanSum acc;
    for (int k = 0; k < 3; ++k) {
        const double a = pts[k], b = pts[k + 1];
        if (b <= a) continue;
        if (b <= s.a0) { // shape == 1
            acc.add((std::pow(b, n) - std::pow(a, n)) / n);
        } else if (a >= s.a1) { // shape == 0
            continue;
        } else {
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            double panel = 0.0;
            for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
                const double r = mid + half * kGlNodes[q];
                panel += kGlWeights[q] * std::pow(r, n - 1) * s(r);
            }
            acc.add(panel * half);
        }
    }
    return acc.value();
}

double resolved_delta(const ModelParameters& p, const InitialDatumSpec& spec) {
    return spec.delta < 0.0 ? 1e-6 * p.m0 / p.domain_volume() : spec.delta;
}

} // namespace

double initial_datum_value(const ModelParameters& p, const InitialDatumSpec& spec, double plateau,
                           double r) {
    const Shape s = make_shape(p, spec);
    const double delta = resolved_delta(p, spec);
    return delta + (plateau - delta) * s(r);
}

double solve_plateau_height(const ModelParameters& p, const InitialDatumSpec& spec) {
    if (!(spec.r1 > 0.0) || spec.r1 > p.R)
        throw invalid_field_error("initial datum: r1 must lie in (0, R]");
    if (spec.smoothness < 1 || spec.smoothness > 6)
        throw invalid_field_error("initial datum: smoothness order must lie in [1, 6]");
    const double delta = resolved_delta(p, spec);
    if (!(delta > 0.0)) throw invalid_field_error("initial datum: background floor must be positive");

    const Shape s = make_shape(p, spec);
    const double surf = static_cast<double>(p.n) * unit_ball_volume(p.n);
    // Total mass is linear in the plateau height A:
    //   m(A) = delta |Omega| + (A - delta) surf G,  G = int shape rho^{n-1}.
    const double G = shape_shell_integral(s, p.n, 0.0, p.R);
    const double background = delta * p.domain_volume();
    if (background >= p.m0)
        throw infeasible_datum_error("initial datum: background floor alone exceeds the total mass");
    const double A = delta + (p.m0 - background) / (surf * G);
    if (!(A > delta))
        throw infeasible_datum_error("initial datum: no plateau height satisfies the mass constraint");
    return A;
}

RadialProfile make_initial_datum(const ModelParameters& p, const InitialDatumSpec& spec,
                                 const RadialGrid& grid) {
    validate_parameters(p);
    if (grid.n != p.n) throw invalid_field_error("initial datum: grid dimension mismatch");
    // The concentration region must be resolved.
    std::size_t inside = 0;
    for (std::size_t j = 0; j < grid.cells(); ++j)
        if (grid.nodes[j + 1] <= spec.r1 * (1.0 + 1e-12)) ++inside;
    if (inside < 8)
        throw precondition_error("initial datum: fewer than 8 cells inside [0, r1]");

    const double A = solve_plateau_height(p, spec);
    const double delta = resolved_delta(p, spec);
    const Shape s = make_shape(p, spec);

    RadialProfile u;
    u.grid = grid;
    u.values.resize(grid.cells());
    for (std::size_t j = 0; j < grid.cells(); ++j) {
        const double vol = grid.cell_volume(j);
        const double shell = shape_shell_integral(s, p.n, grid.nodes[j], grid.nodes[j + 1]);
        u.values[j] = delta + (A - delta) * shell / vol;
    }

    const double got = partial_mass(u, spec.r1);
    if (got < p.m1) {
        std::ostringstream msg;
        msg << "initial datum: mass inside B_r1 is " << got << " < m1 = " << p.m1
            << " (r1 too small for the requested concentration)";
        throw infeasible_datum_error(msg.str());
    }
    return u;
}

} // namespace kslab
