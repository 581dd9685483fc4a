#include <cmath>
#include <random>

#include <doctest.h>

#include "kslab/certificate.hpp"
#include "kslab/checks.hpp"
#include "kslab/errors.hpp"
#include "support/oracles.hpp"

using namespace kslab;

namespace {

WState w_of(std::function<double(double)> f, int n, double s_end, std::size_t M) {
    WState w;
    w.grid = SGrid::power(n, s_end, M, 2.0);
    for (double s : w.grid.nodes) w.w.push_back(f(s));
    w.w[0] = 0.0;
    return w;
}

ModelParameters plain(int n, double kappa, double mu, double lambda = 0.0) {
    ModelParameters p;
    p.n = n;
    p.kappa = kappa;
    p.mu = mu;
    p.lambda = lambda;
    p.m0 = 1.0;
    p.m1 = 0.5;
    return p;
}

} // namespace

TEST_CASE("key estimate check") {
    const auto lin = w_of([](double s) { return s; }, 3, 1.0, 200);
    CHECK(check_ws_estimate(lin).pass); // equality everywhere

    const auto concave = w_of([](double s) { return std::log1p(5.0 * s); }, 3, 1.0, 200);
    CHECK(check_ws_estimate(concave).pass);
    CHECK(check_ws_estimate(concave).margin >= 0.0);

    const auto convex = w_of([](double s) { return s * s; }, 3, 1.0, 200);
    CHECK_FALSE(check_ws_estimate(convex).pass);
}

TEST_CASE("monotonicity check") {
    RadialProfile u;
    u.grid = RadialGrid::uniform(3, 1.0, 64);
    u.values.assign(64, 1.0);
    CHECK(check_monotone(u).pass);
    u.values[40] = 1.5; // artificial bump
    CHECK_FALSE(check_monotone(u).pass);
}

TEST_CASE("mass bound check") {
    ModelParameters p = plain(3, 1.5, 1.0);
    std::vector<std::pair<double, double>> decaying = {{0.0, 1.0}, {0.1, 0.95}, {0.2, 0.91}};
    CHECK(check_mass_bound(decaying, p).pass);
    CHECK(check_mass_monotone(decaying, p).pass);

    std::vector<std::pair<double, double>> rising = {{0.0, 1.0}, {0.1, 0.99}, {0.2, 1.01}};
    CHECK_FALSE(check_mass_monotone(rising, p).pass);

    p.lambda = 1.0;
    std::vector<std::pair<double, double>> growth;
    for (double t = 0.0; t <= 1.0; t += 0.1) growth.emplace_back(t, std::exp(t) * 0.999);
    CHECK(check_mass_bound(growth, p).pass);
    growth.emplace_back(1.1, std::exp(1.1) * 1.01); // above the envelope
    CHECK_FALSE(check_mass_bound(growth, p).pass);
    CHECK_THROWS_AS(check_mass_monotone(growth, p), precondition_error);
}

TEST_CASE("linear profile satisfies the full inequality suite in closed form") {
    // the i3 bound relies on the mass identity, so m0 must match the profile
    {
        const auto w = w_of([](double s) { return s; }, 5, 1.2, 2000);
        ModelParameters p = plain(5, 2.0, 0.1);
        p.R = std::pow(1.2, 0.2);
        p.m0 = 5.0 * unit_ball_volume(5) * 1.2; // n |B1| w(R^n)
        p.m1 = 0.5 * p.m0;
        const auto f = compute_I_terms(w, p, 1.15, 0.8);
        CHECK(check_I1(f, p).pass);
        CHECK(check_I2_lower(f, p).pass);
        CHECK(check_I3(f, p).pass);
        CHECK(check_I4_case1(f, p).pass);
    }
    // case 1 parameters
    {
        const auto w = w_of([](double s) { return s; }, 3, 1.2, 2000);
        ModelParameters p = plain(3, 1.4, 1.0);
        p.R = std::pow(1.2, 1.0 / 3.0);
        p.m0 = 3.0 * unit_ball_volume(3) * 1.2;
        p.m1 = 0.5 * p.m0;
        const auto f = compute_I_terms(w, p, 0.6, 0.5);
        CHECK(check_I1(f, p).pass);
        CHECK(check_I2_lower(f, p).pass);
        CHECK(check_I3(f, p).pass);
        CHECK(check_I4_case2(f, p).pass);
    }
}

TEST_CASE("i4 bound degenerates gracefully as gamma approaches 1 from above") {
    const auto w = w_of([](double s) { return s; }, 5, 1.2, 500);
    const ModelParameters p = plain(5, 2.0, 0.1);
    const auto f = compute_I_terms(w, p, 1.0 + 1e-6, 0.8);
    CHECK(check_I4_case1(f, p).pass); // rhs -> -inf, trivial pass
}

TEST_CASE("check preconditions reject out-of-range arguments") {
    const auto w = w_of([](double s) { return s; }, 5, 1.2, 200);
    const ModelParameters p2 = plain(5, 2.0, 0.1);
    const ModelParameters p1 = plain(3, 1.4, 1.0);
    auto f = compute_I_terms(w, p2, 1.15, 0.8);

    f.gamma = 2.0 - 4.0 / 5.0; // boundary of the open interval
    CHECK_THROWS_AS(check_I1(f, p2), precondition_error);
    f.gamma = 0.9;
    CHECK_THROWS_AS(check_I4_case1(f, p2), precondition_error);
    CHECK_THROWS_AS(check_I4_case2(f, p2), precondition_error); // kappa = 2
    f.gamma = 0.2; // below 2(kappa-1)/kappa for kappa = 1.4
    CHECK_THROWS_AS(check_I4_case2(f, p1), precondition_error);
    f.gamma = 0.6;
    f.t = 1.5;
    CHECK_THROWS_AS(check_I3(f, p1), precondition_error);
}

TEST_CASE("explicit constants against quadrature references") {
    CHECK(beta_constant(-0.95) == doctest::Approx(oracle::beta_integral(-0.95)).epsilon(1e-10));
    // the n = 5, gamma = 1.15 values of the chain
    CHECK(beta_constant(-0.95) == doctest::Approx(19.047619047619).epsilon(1e-12));
    CHECK((2.0 - 2.0 / 5.0 - 1.15) * std::sqrt(beta_constant(-0.95)) ==
          doctest::Approx(1.96396).epsilon(1e-4));
    CHECK(constant_C1(5, 1.15) ==
          doctest::Approx(std::pow(5.0, 1.5) * 1.9639610121).epsilon(1e-8));
    CHECK(constant_C2(5, 1.15) == doctest::Approx(4.5209375).epsilon(1e-12));
}

TEST_CASE("inequality suite holds on random admissible profiles") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int tested_case1 = 0, tested_case2 = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(unif(rng) * 4.99); // 3..7
        const double s_end = 0.5 + 1.5 * unif(rng);
        const auto prof = oracle::random_monotone_profile(rng, n, s_end, 400);
        const double s0 = (0.05 + 0.9 * unif(rng)) * std::min(1.0, s_end) * 0.999;

        ModelParameters p;
        p.n = n;
        p.R = std::pow(s_end, 1.0 / n);
        p.lambda = unif(rng) < 0.3 ? 0.5 * unif(rng) : 0.0;
        p.m0 = n * unit_ball_volume(n) * prof.mass_scale; // consistent with w(S)
        p.m1 = 0.5 * p.m0;

        const bool case2 = n >= 5 && unif(rng) < 0.5;
        double gamma;
        if (case2) {
            p.kappa = 2.0;
            p.mu = (0.2 + 0.7 * unif(rng)) * (n - 4.0) / n;
            const double lo = 1.0 + p.mu, hi = 2.0 - 4.0 / n;
            gamma = lo + (hi - lo) * (0.1 + 0.8 * unif(rng));
            ++tested_case2;
        } else {
            const double kmax = std::min(2.0, n / 2.0);
            p.kappa = 1.0 + (kmax - 1.0) * (0.1 + 0.85 * unif(rng));
            const double lo = 2.0 * (p.kappa - 1.0) / p.kappa;
            const double hi = std::min(2.0 - 4.0 / n, 1.0);
            gamma = lo + (hi - lo) * (0.1 + 0.8 * unif(rng));
            ++tested_case1;
        }

        const auto f = compute_I_terms(prof.w, p, gamma, s0);
        CHECK(f.i2 >= 0.0);
        const auto r1 = check_I1(f, p);
        const auto r2 = check_I2_lower(f, p);
        const auto r3 = check_I3(f, p);
        const auto r4 = check_I4(f, p);
        CHECK(r1.pass);
        CHECK(r2.pass);
        CHECK(r3.pass);
        CHECK(r4.pass);
    }
    CHECK(tested_case1 > 20);
    CHECK(tested_case2 > 20);
}

TEST_CASE("riccati corroboration checks") {
    // the exact solution of psi' = d1 psi^2 - d2 satisfies the FD inequality
    const double d1 = 4.0, d2 = 1.0, d3 = 0.5;
    std::vector<std::pair<double, double>> series;
    const double phi0 = 1.2;
    const double C = (phi0 - d3) / (phi0 + d3);
    for (int k = 0; k <= 40; ++k) {
        const double t = 0.002 * k;
        const double e = C * std::exp(2.0 * d1 * d3 * t);
        series.emplace_back(t, d3 * (1.0 + e) / (1.0 - e));
    }
    CHECK(check_phi_level(series, d3, phi0).pass);
    CHECK(check_phi_riccati(series, d1, d2).pass);

    std::vector<std::pair<double, double>> flat = {{0.0, 1.2}, {0.1, 0.4}, {0.2, 0.3}};
    CHECK_FALSE(check_phi_level(flat, d3, 1.0).pass);
}
