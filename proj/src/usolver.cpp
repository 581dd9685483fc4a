#include "kslab/usolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"

namespace kslab {

namespace {

inline double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

} // namespace

void StepControl::validate() const {
    if (!(cfl_diffusion > 0.0 && cfl_diffusion < 1.0) || !(cfl_advection > 0.0 && cfl_advection < 1.0))
        throw invalid_field_error("step control: cfl factors must lie in (0, 1)");
    if (!(dt_min > 0.0)) throw invalid_field_error("step control: dt_min must be positive");
    if (!(blowup_threshold > 1.0)) throw invalid_field_error("step control: blowup_threshold must exceed 1");
    if (!(t_end > 0.0)) throw invalid_field_error("step control: t_end must be positive");
}

USolver::USolver(const ModelParameters& p, const RadialProfile& u0, const StepControl& ctrl)
    : p_(p), ctrl_(ctrl) {
    validate_parameters(p);
    ctrl.validate();
    if (u0.grid.n != p.n) throw invalid_field_error("u-solver: grid dimension mismatch");
    if (u0.values.size() != u0.grid.cells())
        throw invalid_field_error("u-solver: cell count mismatch");
    if (u0.min_value() < 0.0) throw invalid_field_error("u-solver: initial density must be nonnegative");

    state_.u = u0;
    state_.t = 0.0;
    const auto& g = state_.u.grid;
    const std::size_t N = g.cells();

    area_.resize(N + 1);
    ball_vol_.resize(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        area_[i] = std::pow(g.nodes[i], p.n - 1);
        ball_vol_[i] = std::pow(g.nodes[i], p.n) / p.n;
    }
    vol_.resize(N);
    inv_vol_.resize(N);
    center_.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
        vol_[j] = ball_vol_[j + 1] - ball_vol_[j];
        inv_vol_[j] = 1.0 / vol_[j];
        center_[j] = g.cell_center(j);
    }
    inv_dist_.assign(N + 1, 0.0);
    inv_area_.assign(N + 1, 0.0);
    for (std::size_t i = 1; i < N; ++i) {
        inv_dist_[i] = 1.0 / (center_[i] - center_[i - 1]);
        inv_area_[i] = 1.0 / area_[i];
    }

    diff_rate_.resize(N);
    max_diff_rate_ = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        diff_rate_[j] =
            (area_[j + 1] * inv_dist_[j + 1] + area_[j] * inv_dist_[j]) * inv_vol_[j];
        max_diff_rate_ = std::max(max_diff_rate_, diff_rate_[j]);
    }

    vr_.assign(N + 1, 0.0);
    grad_.assign(N + 1, 0.0);
    max_u_ = state_.u.max_value();
    refresh_shell_total();
    state_.mean = p_.n * shell_total_ / (ball_vol_[N] * p_.n) * 1.0; // n W / R^n
    surface_ = p_.n * unit_ball_volume(p_.n);
}

void USolver::refresh_shell_total() {
    KahanSum tot;
    for (std::size_t j = 0; j < state_.u.values.size(); ++j) tot.add(state_.u.values[j] * vol_[j]);
    shell_total_ = tot.value();
}

double USolver::mass() const { return shell_total_ * surface_; }

bool USolver::step() {
    auto& u = state_.u.values;
    const std::size_t N = u.size();
    const double Rn = ball_vol_[N] * p_.n;

    // Periodic exact refresh against accumulation drift in the cached total.
    if ((state_.step_count & 1023) == 0) refresh_shell_total();
    const double mean = p_.n * shell_total_ / Rn;
    state_.mean = mean;

    // Pass 1: faces (gradient, rates). vr is the inward aggregation speed;
    // vr(0) = vr(R) = 0. max_u_ carries over from the previous update.
    double max_adv = 0.0, max_comb = 0.0;
    {
        KahanSum shell;
        vr_[0] = 0.0;
        double out_left = 0.0; // area * outflow speed at the cell's left face
        for (std::size_t i = 1; i <= N; ++i) {
            shell.add((u[i - 1] - mean) * vol_[i - 1]);
            const double v = (i == N) ? 0.0 : shell.value() * inv_area_[i];
            vr_[i] = v;
            const double adv = (out_left + area_[i] * std::max(-v, 0.0)) * inv_vol_[i - 1];
            const double comb = adv + diff_rate_[i - 1];
            if (adv > max_adv) max_adv = adv;
            if (comb > max_comb) max_comb = comb;
            out_left = area_[i] * std::max(v, 0.0);
        }
    }

    const double react_rate = p_.lambda + p_.mu * p_.kappa * pow_kappa(max_u_, p_.kappa - 1.0);
    double dt = ctrl_.cfl_diffusion / max_diff_rate_;
    if (max_adv > 0.0) dt = std::min(dt, ctrl_.cfl_advection / max_adv);
    if (react_rate > 0.0) dt = std::min(dt, 0.5 / react_rate);
    if (max_comb > 0.0) dt = std::min(dt, 0.95 / max_comb);
    if (dt < ctrl_.dt_min) return false;
    dt = std::min(dt, ctrl_.t_end - state_.t);

    // Pass 2: face gradients (diffusive flux and slope raw material).
    grad_[0] = grad_[N] = 0.0;
    for (std::size_t i = 1; i < N; ++i) grad_[i] = (u[i] - u[i - 1]) * inv_dist_[i];

    // Pass 3: fluxes, conservative update, clipping and pointwise reaction.
    const double lambda = p_.lambda, mu = p_.mu, kappa = p_.kappa;
    const bool react = (lambda != 0.0) || (mu != 0.0);
    // cells below this density take a single explicit reaction substep
    double u_single = std::numeric_limits<double>::infinity();
    if (mu > 0.0 && dt > 0.0)
        u_single = std::pow(0.5 / (dt * mu * kappa), 1.0 / (kappa - 1.0));

    const auto& nodes = state_.u.grid.nodes;
    double mass_delta = 0.0, clip_delta = 0.0, max_after = 0.0;
    double flux_prev = 0.0; // area-weighted flux at the left face of cell j
    for (std::size_t j = 0; j < N; ++j) {
        double flux_right = 0.0;
        if (j + 1 < N) {
            const std::size_t i = j + 1;
            const double v = vr_[i];
            double uface;
            if (v >= 0.0) { // inward transport, donor is the outer cell
                const double sl = minmod(grad_[i], grad_[i + 1]);
                uface = u[i] + sl * (nodes[i] - center_[i]);
            } else {
                const double sl = minmod(grad_[i - 1], grad_[i]);
                uface = u[i - 1] + sl * (nodes[i] - center_[i - 1]);
            }
            flux_right = area_[i] * (grad_[i] + v * uface);
        }
        double uj = u[j] + dt * (flux_right - flux_prev) * inv_vol_[j];
        flux_prev = flux_right;
        if (uj < 0.0) {
            clip_delta += -uj * vol_[j];
            uj = 0.0;
        }
        if (react && uj > 0.0) {
            const double before = uj;
            if (uj <= u_single && lambda * dt <= 0.5) {
                uj += dt * (lambda * uj - mu * pow_kappa(uj, kappa));
            } else {
                const double rate = lambda + mu * kappa * pow_kappa(uj, kappa - 1.0);
                const int nsub = std::max(1, static_cast<int>(std::ceil(dt * rate / 0.5)));
                const double h = dt / nsub;
                for (int k = 0; k < nsub; ++k) {
                    uj += h * (lambda * uj - mu * pow_kappa(uj, kappa));
                    if (uj < 0.0) uj = 0.0;
                }
            }
            mass_delta += (uj - before) * vol_[j];
        }
        u[j] = uj;
        if (uj > max_after) max_after = uj;
    }
    max_u_ = max_after;

    state_.clipped_mass += clip_delta * surface_;
    shell_total_ += mass_delta + clip_delta;

    state_.t += dt;
    state_.step_count += 1;
    last_dt_ = dt;
    return true;
}

UState step_u(const UState& state, const ModelParameters& p, const StepControl& ctrl) {
    USolver solver(p, state.u, ctrl);
    UState base = state;
    if (!solver.step()) throw step_failure_error("step_u: admissible dt fell below dt_min");
    UState out = solver.state();
    out.t += base.t;
    out.step_count += base.step_count;
    out.clipped_mass += base.clipped_mass;
    return out;
}

void fit_blowup_time(const std::vector<std::pair<double, double>>& growth_log,
                     BlowupReport& report) {
    if (growth_log.size() < 3) {
        report.T_hat = report.last_time;
        report.alpha = std::numeric_limits<double>::quiet_NaN();
        report.coeff = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    const double m_end = growth_log.back().second;
    std::vector<std::pair<double, double>> window;
    for (const auto& [t, m] : growth_log)
        if (m >= 0.1 * m_end) window.emplace_back(t, m);
    if (window.size() < 3) {
        const std::size_t from = growth_log.size() - 3;
        window.assign(growth_log.begin() + from, growth_log.end());
    }

    const double t_last = window.back().first;
    double width = t_last - window.front().first;
    if (!(width > 0.0)) width = std::max(1e-12, 1e-6 * std::max(t_last, 1.0));

    double best_sse = std::numeric_limits<double>::infinity();
    double best_T = t_last + width, best_slope = -1.0, best_icpt = 0.0;
    const int scans = 257;
    for (int k = 0; k < scans; ++k) {
        // log-spaced offsets from 1e-4 to 3 times the window width
        const double x = static_cast<double>(k) / (scans - 1);
        const double T = t_last + width * std::pow(10.0, -4.0 + x * (std::log10(3.0) + 4.0));
        double sz = 0, sy = 0, szz = 0, szy = 0, syy = 0;
        const double count = static_cast<double>(window.size());
        for (const auto& [t, m] : window) {
            const double z = std::log(T - t), y = std::log(m);
            sz += z; sy += y; szz += z * z; szy += z * y; syy += y * y;
        }
        const double det = count * szz - sz * sz;
        if (std::abs(det) < 1e-30) continue;
        const double slope = (count * szy - sz * sy) / det;
        const double icpt = (sy - slope * sz) / count;
        const double sse = syy - icpt * sy - slope * szy;
        if (sse < best_sse) {
            best_sse = sse;
            best_T = T;
            best_slope = slope;
            best_icpt = icpt;
        }
    }
    report.T_hat = best_T;
    report.alpha = -best_slope;
    report.coeff = std::exp(best_icpt);
}

BlowupReport run_u(const ModelParameters& p, const RadialProfile& u0, const StepControl& ctrl,
                   double record_interval, const URecorder& record) {
    USolver solver(p, u0, ctrl);
    const double initial_max = u0.max_value();
    const double threshold = ctrl.blowup_threshold * initial_max;

    double last_recorded = -1.0;
    auto snapshot = [&]() {
        if (!record || solver.state().t <= last_recorded) return;
        last_recorded = solver.state().t;
        USnapshot s;
        s.t = solver.state().t;
        s.u = solver.state().u;
        s.mean = solver.state().mean;
        s.max_u = solver.max_u();
        s.mass = total_mass(solver.state().u);
        record(s);
    };
    snapshot();

    std::vector<std::pair<double, double>> growth_log;
    growth_log.emplace_back(0.0, initial_max);
    double next_rec = record_interval;

    BlowupReport report;
    while (solver.state().t < ctrl.t_end * (1.0 - 1e-12)) {
        if (!solver.step()) {
            report.detected = true;
            report.reason = "dt collapse";
            break;
        }
        const double t = solver.state().t;
        const double m = solver.max_u();
        if (m >= 1.02 * growth_log.back().second) growth_log.emplace_back(t, m);
        if (t >= next_rec * (1.0 - 1e-12)) {
            snapshot();
            while (next_rec <= t * (1.0 + 1e-12)) next_rec += record_interval;
        }
        if (m > threshold) {
            report.detected = true;
            report.reason = "threshold hit";
            break;
        }
    }
    if (!report.detected) report.reason = "horizon reached";

    report.terminal_max = solver.max_u();
    report.last_time = solver.state().t;
    report.steps = solver.state().step_count;
    if (growth_log.back().first < report.last_time)
        growth_log.emplace_back(report.last_time, report.terminal_max);
    snapshot();
    if (report.detected) fit_blowup_time(growth_log, report);
    return report;
}

} // namespace kslab
