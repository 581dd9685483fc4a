#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kslab/elliptic.hpp"
#include "kslab/params.hpp"
#include "kslab/profile.hpp"

namespace kslab {

/// Explicit step limits and run horizon.
struct StepControl {
    double cfl_diffusion = 0.8;  ///< fraction of the diffusive stability bound
    double cfl_advection = 0.8;  ///< fraction of the advective stability bound
    double dt_min = 1e-14;       ///< below this the step fails
    double blowup_threshold = 1e6; ///< detection at this multiple of the initial max
    double t_end = 1.0;          ///< horizon

    void validate() const;
};

struct UState {
    RadialProfile u;
    double t = 0.0;
    double mean = 0.0;
    long step_count = 0;
    double clipped_mass = 0.0; ///< cumulative mass added by clipping negative undershoot
};

/// Outcome of a run: whether blow-up was flagged, the extrapolated blow-up
/// time and the power-law fit max u ~ coeff * (T_hat - t)^(-alpha).
struct BlowupReport {
    bool detected = false;
    double T_hat = 0.0;
    double alpha = 0.0;
    double coeff = 0.0;
    double terminal_max = 0.0;
    std::string reason; ///< "threshold hit" | "dt collapse" | "horizon reached"
    double last_time = 0.0;
    long steps = 0;
};

struct USnapshot {
    double t;
    RadialProfile u;
    double mean;
    double max_u;
    double mass;
};

using URecorder = std::function<void(const USnapshot&)>;

/// Conservative finite-volume marcher for the density equation in radial
/// coordinates: face flux F = u_r + u*vr (vr is the inward aggregation speed
/// from compute_vr), central diffusion, minmod-limited upwind advection,
/// zero flux at both ends, pointwise reaction with sub-stepping. The time
/// step combines the exact positive-coefficient stencil bounds with the
/// reaction bound 0.5/(lambda + mu*kappa*max(u)^(kappa-1)).
class USolver {
public:
    USolver(const ModelParameters& p, const RadialProfile& u0, const StepControl& ctrl);

    /// Advances one step. Returns false when the admissible dt falls below
    /// ctrl.dt_min (imminent blow-up or an unstable configuration).
    bool step();

    const UState& state() const { return state_; }
    const std::vector<double>& vr() const { return vr_; }
    double last_dt() const { return last_dt_; }
    double max_u() const { return max_u_; }
    double mass() const; ///< physical total mass

private:
    void refresh_shell_total();

    ModelParameters p_;
    StepControl ctrl_;
    UState state_;

    // grid geometry, fixed per run
    std::vector<double> area_;      // r_i^{n-1} at faces
    std::vector<double> inv_area_;  // reciprocal at interior faces
    std::vector<double> ball_vol_;  // r_i^n / n at faces
    std::vector<double> vol_;       // cell volumes
    std::vector<double> inv_vol_;
    std::vector<double> inv_dist_;  // 1 / (x_i - x_{i-1}) at interior faces
    std::vector<double> center_;    // cell centers
    std::vector<double> diff_rate_; // diffusive stencil rate per cell
    double max_diff_rate_ = 0.0;
    double surface_ = 0.0; // n |B_1|

    // work buffers
    std::vector<double> vr_;
    std::vector<double> grad_;
    double max_u_ = 0.0;
    double last_dt_ = 0.0;
    double shell_total_ = 0.0; // \int_0^R rho^{n-1} u, kept current across steps
};

/// One step as a pure function (throws step_failure_error on dt collapse).
UState step_u(const UState& state, const ModelParameters& p, const StepControl& ctrl);

/// Advances from u0 until threshold, dt collapse, or the horizon, invoking
/// `record` at multiples of record_interval (plus the initial and terminal
/// states). On detection the report carries the power-law fit of the last
/// decade of max-u growth.
BlowupReport run_u(const ModelParameters& p, const RadialProfile& u0, const StepControl& ctrl,
                   double record_interval, const URecorder& record);

/// Least-squares power-law fit of max-u growth: scans candidate blow-up times
/// T > t_last and regresses log(max u) on log(T - t) over the last decade.
/// Exposed for the w-solver and tests.
void fit_blowup_time(const std::vector<std::pair<double, double>>& growth_log,
                     BlowupReport& report);

} // namespace kslab
