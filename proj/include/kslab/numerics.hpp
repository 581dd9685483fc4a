#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace kslab {

/// Compensated (Kahan) accumulator. Summation order is fixed by the caller,
/// which keeps replays bit-identical.
class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// \int_a^b s^alpha ds with the logarithmic limit at alpha = -1.
inline double power_integral(double alpha, double a, double b) {
    if (std::abs(alpha + 1.0) < 1e-12) return std::log(b) - std::log(a);
    return (std::pow(b, alpha + 1.0) - std::pow(a, alpha + 1.0)) / (alpha + 1.0);
}

/// \int_a^b s^alpha (s0 - s) ds, valid for alpha > -1 when a = 0.
inline double weighted_power_integral(double alpha, double s0, double a, double b) {
    return s0 * power_integral(alpha, a, b) - power_integral(alpha + 1.0, a, b);
}

/// Polynomial smoothstep of order k: S(0) = 0, S(1) = 1 with the first k
/// derivatives vanishing at both ends. k = 1 is the classic 3x^2 - 2x^3.
inline double smoothstep(int order, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double acc = 0.0;
    // S_k(x) = x^{k+1} sum_{i=0}^{k} C(k+i, i) C(2k+1, k-i) (-x)^i
    auto binom = [](int m, int j) {
        double b = 1.0;
        for (int i = 1; i <= j; ++i) b = b * static_cast<double>(m - j + i) / static_cast<double>(i);
        return b;
    };
    const int k = order;
    double xp = 1.0;
    for (int i = 0; i <= k; ++i) {
        acc += binom(k + i, i) * binom(2 * k + 1, k - i) * xp;
        xp *= -x;
    }
    return std::pow(x, k + 1) * acc;
}

/// u^kappa with cheap paths for the half-integer exponents that dominate use.
inline double pow_kappa(double u, double kappa) {
    if (u <= 0.0) return 0.0;
    if (kappa == 2.0) return u * u;
    if (kappa == 1.5) return u * std::sqrt(u);
    if (kappa == 2.5) return u * u * std::sqrt(u);
    if (kappa == 3.0) return u * u * u;
    return std::pow(u, kappa);
}

inline constexpr double kMachineFloor = 1e-300;

} // namespace kslab
