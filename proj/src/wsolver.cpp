#include "kslab/wsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"

namespace kslab {

double WState::max_density() const {
    double md = 0.0;
    for (std::size_t j = 0; j + 1 < w.size(); ++j)
        md = std::max(md, (w[j + 1] - w[j]) / (grid.nodes[j + 1] - grid.nodes[j]));
    return grid.n * md;
}

WState u_to_w(const RadialProfile& u, const SGrid& sgrid) {
    if (u.grid.n != sgrid.n) throw invalid_field_error("u_to_w: dimension mismatch");
    if (u.min_value() < 0.0) throw invalid_field_error("u_to_w: density must be nonnegative");
    const auto& rg = u.grid;
    const int n = rg.n;
    const std::size_t N = rg.cells();

    std::vector<double> rn(N + 1); // r_j^n at faces
    for (std::size_t j = 0; j <= N; ++j) rn[j] = std::pow(rg.nodes[j], n);

    WState out;
    out.grid = sgrid;
    out.w.assign(sgrid.nodes.size(), 0.0);
    out.t = 0.0;

    KahanSum full; // integral over complete cells
    std::size_t cell = 0;
    for (std::size_t k = 0; k < sgrid.nodes.size(); ++k) {
        const double s = std::min(sgrid.nodes[k], rn[N]);
        while (cell < N && rn[cell + 1] <= s) {
            full.add(u.values[cell] * (rn[cell + 1] - rn[cell]) / n);
            ++cell;
        }
        double w = full.value();
        if (cell < N && s > rn[cell]) w += u.values[cell] * (s - rn[cell]) / n;
        out.w[k] = w;
    }
    out.w[0] = 0.0;
    return out;
}

RadialProfile w_to_u(const WState& ws, const RadialGrid& grid) {
    if (ws.grid.n != grid.n) throw invalid_field_error("w_to_u: dimension mismatch");
    const auto& sn = ws.grid.nodes;
    auto eval_w = [&](double s) {
        s = std::min(s, sn.back());
        const auto it = std::upper_bound(sn.begin(), sn.end(), s);
        std::size_t hi = std::min<std::size_t>(it - sn.begin(), sn.size() - 1);
        if (hi == 0) hi = 1;
        const std::size_t lo = hi - 1;
        const double f = (s - sn[lo]) / (sn[hi] - sn[lo]);
        return ws.w[lo] + f * (ws.w[hi] - ws.w[lo]);
    };

    RadialProfile u;
    u.grid = grid;
    u.values.resize(grid.cells());
    double prev_s = 0.0, prev_w = 0.0;
    for (std::size_t j = 0; j < grid.cells(); ++j) {
        const double s = std::pow(grid.nodes[j + 1], grid.n);
        const double w = eval_w(s);
        u.values[j] = grid.n * (w - prev_w) / (s - prev_s);
        prev_s = s;
        prev_w = w;
    }
    return u;
}

WSolver::WSolver(const ModelParameters& p, const WState& w0, const StepControl& ctrl)
    : p_(p), ctrl_(ctrl), state_(w0) {
    validate_parameters(p);
    ctrl.validate();
    if (w0.grid.n != p.n) throw invalid_field_error("w-solver: grid dimension mismatch");
    if (w0.w.size() != w0.grid.nodes.size()) throw invalid_field_error("w-solver: node count mismatch");
    if (w0.w.front() != 0.0) throw invalid_field_error("w-solver: w(0) must vanish");

    const auto& s = state_.grid.nodes;
    const std::size_t M = state_.grid.intervals();
    const double exp_deg = 2.0 - 2.0 / p.n;
    diff_coef_.assign(M + 1, 0.0);
    for (std::size_t j = 1; j < M; ++j)
        diff_coef_[j] = static_cast<double>(p.n) * p.n * std::pow(s[j], exp_deg);
    ds_.resize(M);
    for (std::size_t j = 0; j < M; ++j) ds_[j] = s[j + 1] - s[j];
    diff_rate_.assign(M + 1, 0.0);
    for (std::size_t j = 1; j < M; ++j) {
        const double denom = ds_[j - 1] + ds_[j];
        diff_rate_[j] = 2.0 * diff_coef_[j] * (1.0 / ds_[j - 1] + 1.0 / ds_[j]) / denom;
    }
    slope_.assign(M, 0.0);
    cum_kappa_.assign(M + 1, 0.0);
    rhs_.assign(M + 1, 0.0);
}

void WSolver::compute_rhs() {
    const auto& s = state_.grid.nodes;
    const auto& w = state_.w;
    const std::size_t M = state_.grid.intervals();
    const double n = p_.n;
    const double mean = state_.mean();
    const double react_coef = std::pow(n, p_.kappa - 1.0) * p_.mu;

    double max_slope = 0.0;
    {
        KahanSum acc;
        for (std::size_t j = 0; j < M; ++j) {
            const double d = (w[j + 1] - w[j]) / ds_[j];
            slope_[j] = d;
            max_slope = std::max(max_slope, d);
            cum_kappa_[j] = acc.value();
            acc.add(pow_kappa(d, p_.kappa) * ds_[j]);
            cum_kappa_[j + 1] = acc.value();
        }
    }
    max_density_ = n * max_slope;

    max_adv_rate_ = 0.0;
    max_combined_ = 0.0;
    for (std::size_t j = 1; j < M; ++j) {
        const double wss = 2.0 * (slope_[j] - slope_[j - 1]) / (ds_[j - 1] + ds_[j]);
        const double a = n * w[j] - mean * s[j];
        const double wsup = (a >= 0.0) ? slope_[j] : slope_[j - 1];
        rhs_[j] = diff_coef_[j] * wss + a * wsup + p_.lambda * w[j] - react_coef * cum_kappa_[j];
        const double adv = std::abs(a) / ((a >= 0.0) ? ds_[j] : ds_[j - 1]);
        max_adv_rate_ = std::max(max_adv_rate_, adv);
        max_combined_ = std::max(max_combined_, adv + diff_rate_[j]);
    }
    rhs_[0] = 0.0;
    rhs_[M] = p_.lambda * w[M] - react_coef * cum_kappa_[M];
}

double WSolver::stability_dt() const {
    double dt = std::numeric_limits<double>::infinity();
    double max_diff = 0.0;
    for (double r : diff_rate_) max_diff = std::max(max_diff, r);
    if (max_diff > 0.0) dt = std::min(dt, ctrl_.cfl_diffusion / max_diff);
    if (max_adv_rate_ > 0.0) dt = std::min(dt, ctrl_.cfl_advection / max_adv_rate_);
    const double react_rate =
        p_.lambda + p_.mu * p_.kappa * pow_kappa(max_density_, p_.kappa - 1.0);
    if (react_rate > 0.0) dt = std::min(dt, 0.5 / react_rate);
    if (max_combined_ > 0.0) dt = std::min(dt, 0.95 / max_combined_);
    return dt;
}

bool WSolver::step() {
    compute_rhs();
    double dt = stability_dt();
    if (dt < ctrl_.dt_min) return false;
    dt = std::min(dt, ctrl_.t_end - state_.t);
    apply_update(dt);
    return true;
}

void WSolver::step_with(double dt) {
    compute_rhs();
    const double bound = stability_dt();
    if (dt > bound)
        throw precondition_error("step_w: dt exceeds the explicit stability bound");
    apply_update(dt);
}

void WSolver::apply_update(double dt) {
    const std::size_t M = state_.grid.intervals();
    for (std::size_t j = 1; j <= M; ++j) state_.w[j] += dt * rhs_[j];
    state_.w[0] = 0.0;
    state_.t += dt;
    last_dt_ = dt;
    steps_ += 1;
}

WState step_w(const WState& state, const ModelParameters& p, double dt) {
    StepControl ctrl;
    ctrl.t_end = state.t + 2.0 * dt + 1.0;
    if (dt < ctrl.dt_min) throw step_failure_error("step_w: dt below dt_min");
    WSolver solver(p, state, ctrl);
    solver.step_with(dt);
    return solver.state();
}

BlowupReport run_w(const ModelParameters& p, const WState& w0, const StepControl& ctrl,
                   double record_interval, const WRecorder& record) {
    WSolver solver(p, w0, ctrl);
    const double initial_max = w0.max_density();
    const double threshold = ctrl.blowup_threshold * initial_max;

    double last_recorded = -1.0;
    auto snapshot = [&]() {
        if (!record || solver.state().t <= last_recorded) return;
        last_recorded = solver.state().t;
        WSnapshot s;
        s.t = solver.state().t;
        s.w = solver.state();
        s.ws0 = solver.state().ws0();
        s.w_end = solver.state().w_end();
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
        const double m = solver.max_density();
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

    report.terminal_max = solver.state().max_density();
    report.last_time = solver.state().t;
    report.steps = solver.steps();
    if (growth_log.back().first < report.last_time)
        growth_log.emplace_back(report.last_time, report.terminal_max);
    snapshot();
    if (report.detected) fit_blowup_time(growth_log, report);
    return report;
}

} // namespace kslab
