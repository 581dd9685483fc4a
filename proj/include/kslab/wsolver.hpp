#pragma once

#include <functional>
#include <vector>

#include "kslab/grid.hpp"
#include "kslab/params.hpp"
#include "kslab/profile.hpp"
#include "kslab/usolver.hpp"

namespace kslab {

/// Mass-accumulation function w(s, t) = \int_0^{s^{1/n}} rho^{n-1} u drho at
/// the nodes of an SGrid. w(0) = 0, w nondecreasing, and
/// n |B_1| w(R^n) is the current total mass.
struct WState {
    SGrid grid;
    std::vector<double> w; ///< node values, size intervals()+1
    double t = 0.0;

    double ws0() const { return w[1] / grid.nodes[1]; }          ///< discrete w_s(0+)
    double w_end() const { return w.back(); }                    ///< w(R^n)
    double mean() const { return grid.n * w.back() / grid.s_end(); }
    double max_density() const;                                  ///< max of n w_s
};

/// Exact transform of a cell-averaged density to w on the given s-grid.
WState u_to_w(const RadialProfile& u, const SGrid& sgrid);

/// Inverse transform: cell averages u_j = n (w(r_{j+1}^n) - w(r_j^n)) / (r_{j+1}^n - r_j^n)
/// with monotone piecewise-linear evaluation of w, so u stays nonnegative for
/// nondecreasing w.
RadialProfile w_to_u(const WState& w, const RadialGrid& grid);

struct WSnapshot {
    double t;
    WState w;
    double ws0;
    double w_end;
};

using WRecorder = std::function<void(const WSnapshot&)>;

/// Direct explicit marcher for the scalar equation
///   w_t = n^2 s^{2-2/n} w_ss + (n w - mean s) w_s + lambda w
///         - n^{kappa-1} mu \int_0^s w_s^kappa,
/// with w(0) = 0 and the integrated mass ODE at s = R^n. The advective term
/// is upwinded by the sign of n w - mean s and the nonlocal integral is a
/// cumulative sum re-evaluated each step.
class WSolver {
public:
    WSolver(const ModelParameters& p, const WState& w0, const StepControl& ctrl);

    bool step();
    /// One update with a prescribed dt; throws precondition_error when dt
    /// exceeds the stability bound.
    void step_with(double dt);
    const WState& state() const { return state_; }
    double last_dt() const { return last_dt_; }
    double max_density() const { return max_density_; }
    long steps() const { return steps_; }
    double stability_dt() const; ///< current admissible step, cfl included

private:
    void compute_rhs();
    void apply_update(double dt);

    ModelParameters p_;
    StepControl ctrl_;
    WState state_;

    std::vector<double> diff_coef_;     // n^2 s^{2-2/n} at nodes
    std::vector<double> diff_rate_;     // stencil outflow rate at nodes
    std::vector<double> ds_;            // interval widths
    std::vector<double> slope_;         // w_s per interval
    std::vector<double> cum_kappa_;     // K(s_j) = \int_0^{s_j} w_s^kappa
    std::vector<double> rhs_;
    double max_density_ = 0.0;
    double max_adv_rate_ = 0.0;
    double max_combined_ = 0.0;
    double last_dt_ = 0.0;
    long steps_ = 0;
};

/// One explicit update with a caller-chosen dt (throws precondition_error if
/// dt exceeds the stability bound, step_failure_error below dt_min floor).
WState step_w(const WState& state, const ModelParameters& p, double dt);

/// Mirror of run_u in the w formulation; blow-up is flagged when max(n w_s)
/// exceeds blowup_threshold times its initial value.
BlowupReport run_w(const ModelParameters& p, const WState& w0, const StepControl& ctrl,
                   double record_interval, const WRecorder& record);

} // namespace kslab
