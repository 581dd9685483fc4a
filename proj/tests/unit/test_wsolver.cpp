#include <cmath>

#include <doctest.h>

#include "kslab/errors.hpp"
#include "kslab/initial_data.hpp"
#include "kslab/numerics.hpp"
#include "kslab/wsolver.hpp"

using namespace kslab;

namespace {

RadialProfile constant_profile(int n, double R, std::size_t N, double c) {
    RadialProfile u;
    u.grid = RadialGrid::uniform(n, R, N);
    u.values.assign(N, c);
    return u;
}

WState linear_w(int n, double Rn, std::size_t M, double slope) {
    WState w;
    w.grid = SGrid::uniform(n, Rn, M);
    for (double s : w.grid.nodes) w.w.push_back(slope * s);
    return w;
}

} // namespace

TEST_CASE("transform of a constant density is linear in s") {
    const int n = 3;
    const double c = 1.0;
    const auto u = constant_profile(n, 2.0, 64, c); // R^n = 8
    const auto w = u_to_w(u, SGrid::uniform(n, 8.0, 50));
    for (std::size_t k = 0; k < w.w.size(); ++k)
        CHECK(w.w[k] == doctest::Approx(c * w.grid.nodes[k] / n).epsilon(1e-13));
    // u = 1, s = 8: w = int_0^2 rho^2 drho = 8/3
    CHECK(w.w.back() == doctest::Approx(8.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("finite differences of w recover the density") {
    ModelParameters p;
    p.n = 5;
    p.kappa = 2.0;
    p.mu = 0.1;
    p.m0 = 1.0;
    p.m1 = 0.5;
    InitialDatumSpec spec;
    spec.r1 = 0.35;
    const auto u = make_initial_datum(p, spec, RadialGrid::uniform(5, 1.0, 1024));
    const auto w = u_to_w(u, SGrid::power(5, 1.0, 1024, 5.0));
    // n w_s at interior nodes approximates u(s^{1/n})
    for (std::size_t j = 10; j + 10 < w.w.size(); j += 37) {
        const double s_mid = 0.5 * (w.grid.nodes[j] + w.grid.nodes[j + 1]);
        const double r = std::pow(s_mid, 1.0 / 5.0);
        const double slope = (w.w[j + 1] - w.w[j]) / (w.grid.nodes[j + 1] - w.grid.nodes[j]);
        double uval = 0.0; // cell average at r
        for (std::size_t c = 0; c < u.grid.cells(); ++c)
            if (u.grid.nodes[c] <= r && r <= u.grid.nodes[c + 1]) uval = u.values[c];
        CHECK(5.0 * slope == doctest::Approx(uval).epsilon(0.02));
    }
}

TEST_CASE("round trip u -> w -> u is tight on matched grids") {
    ModelParameters p;
    p.n = 4;
    p.kappa = 1.5;
    p.mu = 1.0;
    p.m0 = 1.0;
    p.m1 = 0.6;
    InitialDatumSpec spec;
    spec.r1 = 0.3;
    const auto grid = RadialGrid::uniform(4, 1.0, 2048);
    const auto u = make_initial_datum(p, spec, grid);
    const auto w = u_to_w(u, SGrid::power(4, 1.0, 2048, 4.0));
    const auto u2 = w_to_u(w, grid);
    double worst = 0.0;
    for (std::size_t j = 0; j < u.values.size(); ++j)
        worst = std::max(worst, std::abs(u.values[j] - u2.values[j]) / u.max_value());
    CHECK(worst <= 1e-3);
}

TEST_CASE("convex w maps to an increasing density") {
    WState w;
    w.grid = SGrid::uniform(3, 1.0, 64);
    for (double s : w.grid.nodes) w.w.push_back(s * s);
    const auto u = w_to_u(w, RadialGrid::uniform(3, 1.0, 32));
    for (std::size_t j = 0; j + 1 < u.values.size(); ++j) CHECK(u.values[j + 1] >= u.values[j]);
    // w(s) = s/3 with n = 3 gives u = 1
    const auto u1 = w_to_u(linear_w(3, 1.0, 64, 1.0 / 3.0), RadialGrid::uniform(3, 1.0, 32));
    for (double v : u1.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform state is stationary for the w update") {
    ModelParameters p;
    p.n = 5;
    p.kappa = 2.0;
    p.mu = 1e-300;
    p.lambda = 0.0;
    const double c = 2.0;
    const WState w0 = u_to_w(constant_profile(5, 1.0, 64, c), SGrid::uniform(5, 1.0, 64));
    const WState w1 = step_w(w0, p, 1e-7);
    for (std::size_t k = 0; k < w1.w.size(); ++k)
        CHECK(w1.w[k] == doctest::Approx(w0.w[k]).epsilon(1e-12));
}

TEST_CASE("stability bound is enforced for prescribed steps") {
    ModelParameters p;
    p.n = 5;
    p.kappa = 2.0;
    p.mu = 0.1;
    const WState w0 = u_to_w(constant_profile(5, 1.0, 64, 1.0), SGrid::uniform(5, 1.0, 64));
    CHECK_THROWS_AS(step_w(w0, p, 1.0), precondition_error);
}

TEST_CASE("boundary node follows the logistic mass decay") {
    ModelParameters p;
    p.n = 4;
    p.kappa = 2.0;
    p.mu = 0.4;
    p.lambda = 0.0;
    const double c = 2.0;
    StepControl ctrl;
    ctrl.t_end = 0.2;
    WSolver solver(p, u_to_w(constant_profile(4, 1.0, 128, c), SGrid::uniform(4, 1.0, 128)), ctrl);
    while (solver.state().t < ctrl.t_end * (1 - 1e-12)) REQUIRE(solver.step());
    // constant-density reduction: every node obeys c' = -mu c^2
    const double exact = c / (1.0 + p.mu * c * ctrl.t_end);
    CHECK(solver.state().w_end() == doctest::Approx(exact / 4.0).epsilon(1e-4));
    CHECK(solver.state().mean() == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("w stays nondecreasing and pinned at the origin along a run") {
    ModelParameters p;
    p.n = 5;
    p.kappa = 2.0;
    p.mu = 0.1;
    p.m0 = 1.0;
    p.m1 = 0.7;
    InitialDatumSpec spec;
    spec.r1 = 0.25;
    StepControl ctrl;
    ctrl.t_end = 0.01;
    const auto u0 = make_initial_datum(p, spec, RadialGrid::uniform(5, 1.0, 512));
    const WState w0 = u_to_w(u0, SGrid::power(5, 1.0, 512, 5.0));
    int violations = 0;
    run_w(p, w0, ctrl, 0.001, [&](const WSnapshot& s) {
        if (s.w.w.front() != 0.0) ++violations;
        const double tol = 1e-12 * s.w_end;
        for (std::size_t j = 0; j + 1 < s.w.w.size(); ++j)
            if (s.w.w[j + 1] - s.w.w[j] < -tol) ++violations;
    });
    CHECK(violations == 0);
}

TEST_CASE("mean identity holds to rounding") {
    ModelParameters p;
    p.n = 3;
    p.kappa = 1.4;
    p.mu = 0.5;
    p.m0 = 1.0;
    p.m1 = 0.6;
    InitialDatumSpec spec;
    spec.r1 = 0.4;
    const auto u0 = make_initial_datum(p, spec, RadialGrid::uniform(3, 1.0, 256));
    const WState w0 = u_to_w(u0, SGrid::power(3, 1.0, 256, 3.0));
    CHECK(w0.mean() == doctest::Approx(compute_mean(u0)).epsilon(1e-12));
}
