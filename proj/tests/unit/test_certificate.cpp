#include <cmath>

#include <doctest.h>

#include "kslab/certificate.hpp"
#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"
#include "support/oracles.hpp"

using namespace kslab;

namespace {
ModelParameters case2_defaults() {
    ModelParameters p;
    p.n = 5;
    p.R = 1.0;
    p.kappa = 2.0;
    p.mu = 0.1;
    p.lambda = 0.0;
    p.m0 = 1.0;
    p.m1 = 0.9;
    return p;
}
} // namespace

TEST_CASE("beta constant") {
    CHECK(beta_constant(0.0) == 0.5);
    CHECK(beta_constant(1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(beta_constant(-0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    for (double a : {-0.9, -0.5, 0.0, 1.0, 3.0})
        CHECK(std::abs(beta_constant(a) - oracle::beta_integral(a)) <= 1e-10);
    CHECK_THROWS_AS(beta_constant(-1.0), domain_error);
    CHECK_THROWS_AS(beta_constant(-1.5), domain_error);
}

TEST_CASE("gamma selection per regime") {
    {
        const auto sel = select_gamma(case2_defaults());
        CHECK(sel.lo == doctest::Approx(1.1));
        CHECK(sel.hi == doctest::Approx(1.2));
        CHECK(sel.gamma == doctest::Approx(1.15));
        CHECK(sel.epsilon == doctest::Approx(0.05));
    }
    {
        ModelParameters p = case2_defaults();
        p.n = 4;
        p.kappa = 1.5;
        p.mu = 1.0;
        const auto sel = select_gamma(p);
        CHECK(sel.lo == doctest::Approx(2.0 / 3.0));
        CHECK(sel.hi == doctest::Approx(1.0));
        CHECK(sel.gamma == doctest::Approx(5.0 / 6.0));
        CHECK(sel.epsilon == doctest::Approx(1.0)); // epsilon = mu in case 1
    }
    {
        ModelParameters p = case2_defaults();
        p.n = 3;
        p.kappa = 1.4;
        p.mu = 1.0;
        const auto sel = select_gamma(p);
        CHECK(sel.lo == doctest::Approx(4.0 / 7.0));
        CHECK(sel.hi == doctest::Approx(2.0 / 3.0));
        CHECK(sel.gamma == doctest::Approx(0.6190476190).epsilon(1e-8));
    }
    {
        ModelParameters p = case2_defaults();
        p.n = 3;
        p.kappa = 1.6;
        CHECK_THROWS_AS(select_gamma(p), empty_interval_error);
    }
}

TEST_CASE("assembled constants match independent quadrature") {
    ModelParameters p = case2_defaults();
    p.m0 = 2.0;
    p.m1 = 1.0;
    const double gamma = 1.15;
    // C0 = m1/(n |B1|) * int_{1/4}^1 sigma^{-gamma}(1-sigma) dsigma
    const double sigma_int = oracle::adaptive_simpson(
        [&](double s) { return std::pow(s, -gamma) * (1.0 - s); }, 0.25, 1.0);
    CHECK(constant_C0(p, gamma) ==
          doctest::Approx(p.m1 / (5.0 * unit_ball_volume(5)) * sigma_int).epsilon(1e-11));
    CHECK(constant_C0(p, gamma) == doctest::Approx(0.0276).epsilon(2e-3));
    CHECK(5.0 * unit_ball_volume(5) == doctest::Approx(8.0 * M_PI * M_PI / 3.0).epsilon(1e-13));
    CHECK(constant_C2(5, gamma) == doctest::Approx(4.521).epsilon(1e-3));

    const auto sel = select_gamma(case2_defaults());
    const auto chain = assemble_constants(case2_defaults(), sel);
    CHECK(chain.C4prime == 0.0); // case 2
    CHECK(chain.c1 == doctest::Approx(sel.epsilon / (2.0 * (0.1 + sel.epsilon))).epsilon(1e-14));
    CHECK(chain.c3 == doctest::Approx(chain.C2 * chain.c1).epsilon(1e-14));
    CHECK(chain.c2 > 0.0);
}

TEST_CASE("case 1 assembles a positive Young remainder") {
    ModelParameters p = case2_defaults();
    p.n = 4;
    p.kappa = 1.5;
    p.mu = 1.0;
    p.m1 = 0.5;
    const auto sel = select_gamma(p);
    const auto chain = assemble_constants(p, sel);
    CHECK(chain.C4 > 0.0);
    CHECK(chain.C4prime > 0.0);
    CHECK(chain.B_i4 == doctest::Approx(beta_constant((sel.gamma - 1.0) * 1.5 / 0.5)).epsilon(1e-14));
}

TEST_CASE("riccati bound unit") {
    CHECK(riccati_time_bound(4.0, 1.0, 1.0) == 0.5); // exact
    // monotone decreasing in phi0
    double prev = riccati_time_bound(4.0, 1.0, 1.0);
    for (double phi0 : {1.1, 1.5, 2.0, 5.0}) {
        const double b = riccati_time_bound(4.0, 1.0, phi0);
        CHECK(b < prev);
        prev = b;
    }
    CHECK_THROWS_AS(riccati_time_bound(4.0, 1.0, 0.5), precondition_error); // phi0 = d3
    CHECK_THROWS_AS(riccati_time_bound(4.0, 1.0, 0.99), precondition_error);
    CHECK_THROWS_AS(riccati_time_bound(-1.0, 1.0, 10.0), precondition_error);
}

TEST_CASE("certificates in both regimes") {
    {
        const BlowupCertificate cert = certify(case2_defaults());
        CHECK(cert.margin >= 0.0);
        CHECK(cert.certified_bound <= 0.5);
        CHECK(cert.s0 > 0.0);
        CHECK(cert.s0 < 1.0);
        CHECK(cert.r1 == doctest::Approx(std::pow(cert.s0 / 4.0, 0.2)).epsilon(1e-14));
        CHECK(cert.d1 * cert.d3 * cert.d3 - cert.d2 ==
              doctest::Approx(0.0).epsilon(1e-14)); // scale-free: compare against d2
        CHECK(std::abs(cert.d1 * cert.d3 * cert.d3 - cert.d2) <= 1e-12 * cert.d2);
        CHECK(cert.phi0 >= cert.d3 + 2.0 / cert.d1);
        // feasibility persists at smaller cutoffs (exponent ordering)
        for (int k = 1; k <= 5; ++k) {
            const double s = cert.s0 * std::pow(10.0, -k);
            const double d1 = cert.chain.c3 * std::pow(s, -(3.0 - cert.chain.gamma));
            const double d2 = cert.chain.c2 * s;
            const double gap = cert.chain.C0 * std::pow(s, 2.0 - cert.chain.gamma) -
                               std::sqrt(d2 / d1) - 2.0 / d1;
            CHECK(gap >= 0.0);
        }
    }
    {
        ModelParameters p = case2_defaults();
        p.n = 4;
        p.kappa = 1.5;
        p.mu = 1.0;
        p.m1 = 0.5;
        const BlowupCertificate cert = certify(p);
        CHECK(cert.margin >= 0.0);
        CHECK(cert.certified_bound <= 0.5);
        CHECK(cert.chain.C4prime > 0.0);
    }
    {
        ModelParameters p = case2_defaults();
        p.n = 3;
        p.kappa = 1.6;
        CHECK_THROWS_AS(certify(p), empty_interval_error);
    }
}

TEST_CASE("doubling m1 weakly enlarges the cutoff") {
    ModelParameters p = case2_defaults();
    p.m1 = 0.4;
    const double s0_small = certify(p).s0;
    const double c0_small = certify(p).chain.C0;
    p.m1 = 0.8;
    const double s0_large = certify(p).s0;
    CHECK(certify(p).chain.C0 == doctest::Approx(2.0 * c0_small).epsilon(1e-12));
    CHECK(s0_large >= s0_small);
}

TEST_CASE("certificate regeneration is bit-identical") {
    const std::string a = certificate_to_json(certify(case2_defaults()));
    const std::string b = certificate_to_json(certify(case2_defaults()));
    CHECK(a == b);
    CHECK(a.find("certified_bound") != std::string::npos);
    CHECK(a.find("formula") != std::string::npos);
}
