#include "kslab/elliptic.hpp"

#include <cmath>

#include "kslab/numerics.hpp"

namespace kslab {

GradientProfile compute_vr(const RadialProfile& u) {
    const auto& g = u.grid;
    const int n = g.n;
    const std::size_t N = g.cells();

    GradientProfile out;
    out.grid = g;
    out.vr.assign(N + 1, 0.0);

    const double mean = compute_mean(u);
    KahanSum shell; // \int_0^{r_i} rho^{n-1} (u - mean) drho
    for (std::size_t i = 1; i < N; ++i) {
        shell.add((u.values[i - 1] - mean) * g.cell_volume(i - 1));
        const double r = g.nodes[i];
        out.vr[i] = shell.value() / std::pow(r, n - 1);
    }
    // r = 0 by symmetry; r = R by definition of the mean.
    out.vr[0] = 0.0;
    shell.add((u.values[N - 1] - mean) * g.cell_volume(N - 1));
    out.vr[N] = shell.value() / std::pow(g.R(), n - 1);
    return out;
}

} // namespace kslab
