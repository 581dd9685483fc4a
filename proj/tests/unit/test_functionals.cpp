#include <cmath>

#include <doctest.h>

#include "kslab/errors.hpp"
#include "kslab/functionals.hpp"
#include "support/oracles.hpp"

using namespace kslab;

namespace {

WState linear_w(int n, double s_end, std::size_t M) {
    WState w;
    w.grid = SGrid::power(n, s_end, M, 2.0);
    for (double s : w.grid.nodes) w.w.push_back(s);
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

TEST_CASE("phi of the linear profile") {
    const WState w = linear_w(5, 1.2, 800);
    const double s0 = 0.8;
    // gamma -> 0 limit: phi = s0^3/6
    CHECK(compute_phi(w, 1e-12, s0) == doctest::Approx(s0 * s0 * s0 / 6.0).epsilon(1e-9));
    // general gamma: phi = s0^{3-gamma}/((2-gamma)(3-gamma))
    for (double gamma : {0.3, 0.9, 1.0, 1.5, 1.9}) {
        const double expected = std::pow(s0, 3.0 - gamma) / ((2.0 - gamma) * (3.0 - gamma));
        CHECK(compute_phi(w, gamma, s0) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("phi of a curved profile against adaptive quadrature") {
    WState w;
    w.grid = SGrid::power(5, 1.0, 4000, 3.0);
    for (double s : w.grid.nodes) w.w.push_back(s * s);
    const double gamma = 1.5, s0 = 0.6;
    // exact: int s^{2-gamma} (s0 - s) = B(a) s0^{a+2}, a = 0.5
    const double exact = oracle::beta_integral(0.5) * std::pow(s0, 2.5);
    CHECK(compute_phi(w, gamma, s0) == doctest::Approx(exact).epsilon(1e-6));
    CHECK(oracle::beta_integral(0.5) == doctest::Approx(4.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("domain errors") {
    const WState w = linear_w(3, 1.0, 64);
    CHECK_THROWS_AS(compute_phi(w, 2.5, 0.5), domain_error);
    CHECK_THROWS_AS(compute_phi(w, -0.1, 0.5), domain_error);
    CHECK_THROWS_AS(compute_phi(w, 1.0, 1.5), domain_error);
    CHECK_THROWS_AS(compute_I_terms(w, plain(3, 1.5, 1.0), 1.0, 2.0), domain_error);
}

TEST_CASE("uniform state: i2 positive and i2 + i3 = 0") {
    const int n = 5;
    const double c = 3.0;
    WState w;
    w.grid = SGrid::uniform(n, 1.0, 512);
    for (double s : w.grid.nodes) w.w.push_back(c * s / n);
    const auto f = compute_I_terms(w, plain(n, 2.0, 0.1), 1.15, 0.5);
    CHECK(f.i2 > 0.0);
    CHECK(f.i2 + f.i3 == doctest::Approx(0.0).epsilon(1e-10));
    // int_0^{s0} s^{1-gamma} (s0-s) ds = B(1-gamma) s0^{3-gamma}
    const double expected_i2 =
        n * (c / n) * (c / n) * oracle::beta_integral(-0.15) * std::pow(0.5, 1.85);
    CHECK(f.i2 == doctest::Approx(expected_i2).epsilon(1e-8));
}

TEST_CASE("linear profile closed forms at gamma = 1/2") {
    // w(s) = s, n = 5, kappa = 2, mu = 1, s0 = 1: each term is a beta value
    const WState w = linear_w(5, 1.2, 2000);
    const auto f = compute_I_terms(w, plain(5, 2.0, 1.0), 0.5, 1.0);
    CHECK(f.i4 == doctest::Approx(-4.0 / 3.0).epsilon(1e-10)); // -n mu B(1/2)
    CHECK(f.i2 == doctest::Approx(4.0 / 3.0).epsilon(1e-10));  // n B(1/2)
    CHECK(f.i3 == doctest::Approx(-4.0 / 3.0).epsilon(1e-10)); // mean = n here
    CHECK(f.i1 == doctest::Approx(0.0).epsilon(1e-10));        // w_ss = 0
    CHECK(f.mean == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("lambda term is lambda times phi") {
    const WState w = linear_w(4, 1.0, 300);
    const auto f = compute_I_terms(w, plain(4, 1.5, 1.0, 0.7), 0.8, 0.5);
    CHECK(f.lambda_term == doctest::Approx(0.7 * f.phi).epsilon(1e-13));
    CHECK(f.lambda_term >= 0.0);
}

TEST_CASE("quadrature refinement converges at first order or better") {
    auto phi_at = [&](std::size_t M) {
        WState w;
        w.grid = SGrid::power(5, 1.0, M, 3.0);
        for (double s : w.grid.nodes) w.w.push_back(std::sqrt(s + 1e-30) * s); // w ~ s^{3/2}
        return compute_phi(w, 1.3, 0.7);
    };
    const double p1 = phi_at(500), p2 = phi_at(1000), p4 = phi_at(4000);
    CHECK(std::abs(p1 - p4) / std::abs(p4) < 1e-4);
    CHECK(std::abs(p1 - p4) > 1.8 * std::abs(p2 - p4)); // at least first order
}
