#pragma once

#include <string>
#include <vector>

namespace kslab {

/// Radial face grid 0 = r_0 < ... < r_N = R for a ball in R^n. Cell j lives
/// between faces j and j+1 and stores a cell-averaged density.
struct RadialGrid {
    int n = 3;                 ///< space dimension
    std::vector<double> nodes; ///< faces, size N+1
    std::string grading;       ///< "uniform" or "geometric(<first/last ratio>)"

    std::size_t cells() const { return nodes.size() - 1; }
    double R() const { return nodes.back(); }
    double cell_width(std::size_t j) const { return nodes[j + 1] - nodes[j]; }
    double cell_center(std::size_t j) const { return 0.5 * (nodes[j] + nodes[j + 1]); }
    /// Shell volume per unit sphere area: (r_{j+1}^n - r_j^n)/n.
    double cell_volume(std::size_t j) const;

    static RadialGrid uniform(int n, double R, std::size_t cells);
    /// Geometric clustering toward the origin; ratio = first cell / last cell,
    /// in (0, 1].
    static RadialGrid geometric(int n, double R, std::size_t cells, double ratio);
};

/// Node grid 0 = s_0 < ... < s_M = R^n for the mass-accumulation variable.
struct SGrid {
    int n = 3;
    std::vector<double> nodes; ///< size M+1
    std::string grading;       ///< "power(p)" or "uniform"

    std::size_t intervals() const { return nodes.size() - 1; }
    double s_end() const { return nodes.back(); }

    static SGrid uniform(int n, double Rn, std::size_t intervals);
    /// s_j = R^n (j/M)^p; p = n reproduces the image of a uniform radial grid,
    /// which clusters toward the origin while the degenerate diffusion keeps
    /// the explicit step bound at the uniform-radial level.
    static SGrid power(int n, double Rn, std::size_t intervals, double exponent);
    /// Image of a radial grid under s = r^n.
    static SGrid from_radial(const RadialGrid& g);
};

} // namespace kslab
