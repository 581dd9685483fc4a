#include <cmath>

#include <doctest.h>

#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"
#include "kslab/profile.hpp"
#include "support/oracles.hpp"

using namespace kslab;

TEST_CASE("grid construction") {
    const auto g = RadialGrid::uniform(5, 2.0, 64);
    CHECK(g.cells() == 64);
    CHECK(g.nodes.front() == 0.0);
    CHECK(g.nodes.back() == 2.0);

    const auto gg = RadialGrid::geometric(3, 1.0, 128, 1e-3);
    CHECK(gg.nodes.front() == 0.0);
    CHECK(gg.nodes.back() == 1.0);
    for (std::size_t i = 0; i + 1 < gg.nodes.size(); ++i) CHECK(gg.nodes[i] < gg.nodes[i + 1]);
    const double first = gg.cell_width(0), last = gg.cell_width(127);
    CHECK(first / last == doctest::Approx(1e-3).epsilon(1e-6));

    CHECK_THROWS_AS(RadialGrid::uniform(3, 1.0, 8), invalid_field_error);

    const auto sg = SGrid::power(5, 1.0, 64, 5.0);
    CHECK(sg.nodes.front() == 0.0);
    CHECK(sg.nodes.back() == 1.0);
    const auto si = SGrid::from_radial(RadialGrid::uniform(5, 1.0, 64));
    for (std::size_t i = 0; i < si.nodes.size(); ++i)
        CHECK(si.nodes[i] == doctest::Approx(sg.nodes[i]).epsilon(1e-13));
}

TEST_CASE("partial mass of constant profiles") {
    const int n = 4;
    const double R = 1.3, c = 2.5;
    RadialProfile u;
    u.grid = RadialGrid::uniform(n, R, 64);
    u.values.assign(64, c);
    const double B1 = unit_ball_volume(n);
    CHECK(partial_mass(u, R) == doctest::Approx(c * B1 * std::pow(R, n)).epsilon(1e-13));
    CHECK(partial_mass(u, R / 2) == doctest::Approx(c * B1 * std::pow(R / 2, n)).epsilon(1e-13));
    CHECK(compute_mean(u) == doctest::Approx(c).epsilon(1e-13));
}

TEST_CASE("partial mass is additive over shells and monotone") {
    RadialProfile u;
    u.grid = RadialGrid::geometric(3, 1.0, 64, 0.1);
    for (std::size_t j = 0; j < 64; ++j) u.values.push_back(1.0 / (1.0 + j));
    const double a = partial_mass(u, 0.3), b = partial_mass(u, 0.7);
    CHECK(b >= a);
    // shell [0.3, 0.7] equals the difference
    double prev = 0.0;
    for (double r = 0.05; r <= 1.0; r += 0.05) {
        const double m = partial_mass(u, r);
        CHECK(m >= prev);
        prev = m;
    }
    CHECK(partial_mass(u, 1.0) == doctest::Approx(total_mass(u)));
    CHECK_THROWS_AS(partial_mass(u, 1.5), domain_error);
}

TEST_CASE("zero profile has zero mean") {
    RadialProfile u;
    u.grid = RadialGrid::uniform(3, 1.0, 32);
    u.values.assign(32, 0.0);
    CHECK(compute_mean(u) == 0.0);
}
