#include "kslab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "kslab/errors.hpp"
#include "kslab/numerics.hpp"
#include "kslab/plot.hpp"
#include "kslab/table.hpp"

namespace kslab {

namespace {

namespace fs = std::filesystem;

struct DiagnosticsPlan {
    double gamma = 0.0; ///< 0 means no functional diagnostics
    std::vector<double> s0;
};

DiagnosticsPlan resolve_diagnostics(const RunConfig& cfg,
                                    const std::optional<BlowupCertificate>& cert) {
    DiagnosticsPlan plan;
    if (!cfg.diagnostics) return plan;
    if (cfg.gamma > 0.0) {
        plan.gamma = cfg.gamma;
    } else if (cert) {
        plan.gamma = cert->chain.gamma;
    } else {
        try {
            plan.gamma = select_gamma(cfg.model).gamma;
        } catch (const empty_interval_error&) {
            return plan; // basic checks only
        }
    }
    if (!cfg.s0_list.empty()) plan.s0 = cfg.s0_list;
    else if (cert) plan.s0 = {cert->s0};
    else plan.s0 = {0.25 * std::min(1.0, cfg.model.Rn())};
    for (double s0 : plan.s0)
        if (!(s0 > 0.0 && s0 < cfg.model.Rn()))
            throw config_error("diagnostics: s0 must lie in (0, R^n)");
    return plan;
}

struct SeriesRow {
    double t, max_u, mass, mean, ws0, w_end;
};

void write_timeseries(const fs::path& path, const std::vector<SeriesRow>& rows,
                      const std::string& what) {
    Table t({"t", "max_u", "total_mass", "mean", "ws0", "w_end"});
    for (const auto& r : rows)
        t.add_row({r.t, r.max_u, r.mass, r.mean, r.ws0, r.w_end});
    t.write(path, what);
}

void write_profiles_w(const fs::path& path, const std::vector<WSnapshot>& snaps) {
    Table t({"t", "s", "w"});
    for (const auto& snap : snaps)
        for (std::size_t j = 0; j < snap.w.w.size(); ++j)
            t.add_row({snap.t, snap.w.grid.nodes[j], snap.w.w[j]});
    t.write(path, "mass accumulation snapshots, long form");
}

void write_profiles_u(const fs::path& path, const std::vector<USnapshot>& snaps) {
    Table t({"t", "r", "u"});
    for (const auto& snap : snaps)
        for (std::size_t j = 0; j < snap.u.values.size(); ++j)
            t.add_row({snap.t, snap.u.grid.cell_center(j), snap.u.values[j]});
    t.write(path, "density snapshots at cell centers, long form");
}

nlohmann::ordered_json report_json(const BlowupReport& r) {
    nlohmann::ordered_json j;
    j["detected"] = r.detected;
    j["reason"] = r.reason;
    j["T_hat"] = r.T_hat;
    j["alpha"] = r.alpha;
    j["coeff"] = r.coeff;
    j["terminal_max"] = r.terminal_max;
    j["last_time"] = r.last_time;
    j["steps"] = r.steps;
    return j;
}

/// Applicable functional checks for one sample.
void run_functional_checks(const FunctionalSample& f, const ModelParameters& p,
                           std::vector<CheckResult>& out) {
    if (f.gamma < 2.0 - 4.0 / p.n) out.push_back(check_I1(f, p));
    out.push_back(check_I2_lower(f, p));
    if (f.t < 1.0) out.push_back(check_I3(f, p));
    if (p.kappa == 2.0) {
        if (f.gamma > 1.0) out.push_back(check_I4_case1(f, p));
    } else if (p.kappa > 1.0 && p.kappa < 2.0) {
        const double glo = 2.0 * (p.kappa - 1.0) / p.kappa;
        if (f.gamma > glo && f.gamma < 1.0 && f.s0 < std::min(1.0, p.Rn()))
            out.push_back(check_I4_case2(f, p));
    }
}

void append_check_rows(Table& t, const std::vector<CheckResult>& checks, double gamma, double s0) {
    for (const auto& c : checks)
        t.add_row({c.name, c.time, gamma, s0, c.lhs, c.rhs, c.margin, c.tol,
                   std::string(c.pass ? "pass" : "FAIL")});
}

unsigned worker_count(std::size_t jobs) {
    unsigned workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("KSLAB_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) workers = static_cast<unsigned>(v);
    }
    if (workers == 0) workers = 1;
    return static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
}

} // namespace

RunArtifacts run_experiment(const RunConfig& cfg, const fs::path& out_dir) {
    RunArtifacts art;
    art.config = cfg;
    art.dir = out_dir;
    fs::create_directories(out_dir);

    { // byte-identical snapshot of the input
        std::ofstream f(out_dir / "config.txt", std::ios::binary);
        f << cfg.raw_text;
    }

    const Regime regime = validate_parameters(cfg.model);
    const bool need_cert = cfg.certificate || cfg.datum_r1_auto;
    if (need_cert) {
        if (regime == Regime::Unclassified)
            throw config_error("certificate requested but parameters are outside both blow-up regimes");
        art.certificate = certify(cfg.model);
        std::ofstream f(out_dir / "certificate.json", std::ios::binary);
        f << certificate_to_json(*art.certificate);
    }

    InitialDatumSpec datum = cfg.datum;
    if (cfg.datum_r1_auto) datum.r1 = art.certificate->r1;

    const RadialGrid rgrid = cfg.make_radial_grid();
    const SGrid sgrid = cfg.make_s_grid();
    const RadialProfile u0 = make_initial_datum(cfg.model, datum, rgrid);

    const DiagnosticsPlan plan = resolve_diagnostics(cfg, art.certificate);

    std::vector<USnapshot> usnaps;
    std::vector<WSnapshot> wsnaps;
    const bool run_u_solver = cfg.solver != SolverChoice::W;
    const bool run_w_solver = cfg.solver != SolverChoice::U;

    if (run_u_solver) {
        art.report_u = run_u(cfg.model, u0, cfg.control, cfg.record_interval,
                             [&](const USnapshot& s) { usnaps.push_back(s); });
    }
    if (run_w_solver) {
        const WState w0 = u_to_w(u0, sgrid);
        art.report_w = run_w(cfg.model, w0, cfg.control, cfg.record_interval,
                             [&](const WSnapshot& s) { wsnaps.push_back(s); });
    }

    const double surface = cfg.model.n * unit_ball_volume(cfg.model.n);

    // Time-series tables.
    std::vector<SeriesRow> urows, wrows;
    for (const auto& s : usnaps) {
        const WState w = u_to_w(s.u, sgrid);
        urows.push_back({s.t, s.max_u, s.mass, s.mean, w.ws0(), w.w_end()});
    }
    for (const auto& s : wsnaps)
        wrows.push_back({s.t, s.w.max_density(), surface * s.w_end, s.w.mean(), s.ws0, s.w_end});
    if (run_u_solver) {
        write_timeseries(out_dir / "timeseries_u.csv", urows, "density-solver time series");
        write_profiles_u(out_dir / "profiles_u.csv", usnaps);
        std::ofstream f(out_dir / "report_u.json", std::ios::binary);
        f << report_json(*art.report_u).dump(2) << "\n";
    }
    if (run_w_solver) {
        write_timeseries(out_dir / "timeseries_w.csv", wrows, "mass-accumulation-solver time series");
        write_profiles_w(out_dir / "profiles_w.csv", wsnaps);
        std::ofstream f(out_dir / "report_w.json", std::ios::binary);
        f << report_json(*art.report_w).dump(2) << "\n";
    }

    // Cross-check when both solvers ran: sup-norm deviation of w at matched
    // record indices (times agree up to one step).
    if (run_u_solver && run_w_solver) {
        Table cross({"index", "t_u", "t_w", "max_abs_dev", "rel_dev"});
        const std::size_t m = std::min(usnaps.size(), wsnaps.size());
        for (std::size_t k = 0; k < m; ++k) {
            const WState wu = u_to_w(usnaps[k].u, wsnaps[k].w.grid);
            double dev = 0.0, scale = 0.0;
            for (std::size_t j = 0; j < wu.w.size(); ++j) {
                dev = std::max(dev, std::abs(wu.w[j] - wsnaps[k].w.w[j]));
                scale = std::max(scale, std::abs(wsnaps[k].w.w[j]));
            }
            const double rel = scale > 0.0 ? dev / scale : 0.0;
            art.cross_check_max_dev = std::max(art.cross_check_max_dev, rel);
            cross.add_row({static_cast<long>(k), usnaps[k].t, wsnaps[k].t, dev, rel});
        }
        cross.write(out_dir / "cross_check.csv", "dual-solver deviation in the transformed norm");
    }

    // Inequality checks over every snapshot.
    Table ineq({"check", "t", "gamma", "s0", "lhs", "rhs", "margin", "tol", "status"});
    auto push = [&](const CheckResult& c, double gamma, double s0) {
        art.checks.push_back(c);
        append_check_rows(ineq, {c}, gamma, s0);
        if (!c.pass) art.all_checks_pass = false;
    };

    if (cfg.diagnostics) {
        std::vector<std::pair<double, double>> mass_u, mass_w;
        for (const auto& s : usnaps) mass_u.emplace_back(s.t, s.mass);
        for (const auto& r : wrows) mass_w.emplace_back(r.t, r.mass);

        for (const auto& s : usnaps) {
            CheckResult mono = check_monotone(s.u);
            mono.time = s.t;
            push(mono, 0.0, 0.0);
            const WState w = u_to_w(s.u, sgrid);
            push(check_ws_estimate(w), 0.0, 0.0);
        }
        for (const auto& s : wsnaps) {
            push(check_w_monotone(s.w), 0.0, 0.0);
            push(check_ws_estimate(s.w), 0.0, 0.0);
        }
        if (!mass_u.empty()) {
            push(check_mass_bound(mass_u, cfg.model), 0.0, 0.0);
            if (cfg.model.lambda == 0.0) push(check_mass_monotone(mass_u, cfg.model), 0.0, 0.0);
        }
        if (!mass_w.empty()) {
            push(check_mass_bound(mass_w, cfg.model), 0.0, 0.0);
            if (cfg.model.lambda == 0.0) push(check_mass_monotone(mass_w, cfg.model), 0.0, 0.0);
        }

        if (plan.gamma > 0.0) {
            auto sample_all = [&](const WState& w, double t) {
                for (double s0 : plan.s0) {
                    FunctionalSample f = compute_I_terms(w, cfg.model, plan.gamma, s0);
                    f.t = t;
                    art.functionals.push_back(f);
                    std::vector<CheckResult> fc;
                    run_functional_checks(f, cfg.model, fc);
                    for (auto& c : fc) push(c, plan.gamma, s0);
                }
            };
            for (const auto& s : usnaps) sample_all(u_to_w(s.u, sgrid), s.t);
            for (const auto& s : wsnaps) sample_all(s.w, s.t);
        }

        // Certificate corroboration along the run.
        if (art.certificate && cfg.datum_r1_auto) {
            const auto& cert = *art.certificate;
            auto phi_series_of = [&](auto const& snaps, auto to_w) {
                std::vector<std::pair<double, double>> series;
                for (const auto& s : snaps)
                    series.emplace_back(s.t, compute_phi(to_w(s), cert.chain.gamma, cert.s0));
                return series;
            };
            auto corroborate = [&](const std::vector<std::pair<double, double>>& series) {
                if (series.empty()) return;
                push(check_phi_level(series, cert.d3, cert.phi0), cert.chain.gamma, cert.s0);
                push(check_phi_riccati(series, cert.d1, cert.d2), cert.chain.gamma, cert.s0);
            };
            if (run_u_solver)
                corroborate(phi_series_of(usnaps, [&](const USnapshot& s) { return u_to_w(s.u, sgrid); }));
            if (run_w_solver)
                corroborate(phi_series_of(wsnaps, [&](const WSnapshot& s) { return s.w; }));
        }
    }
    ineq.write(out_dir / "inequalities.csv", "inequality check records");

    if (!art.functionals.empty()) {
        Table ft({"t", "gamma", "s0", "phi", "i1", "i2", "i3", "i4", "lambda_term"});
        for (const auto& f : art.functionals)
            ft.add_row({f.t, f.gamma, f.s0, f.phi, f.i1, f.i2, f.i3, f.i4, f.lambda_term});
        ft.write(out_dir / "functionals.csv", "moment functional and production terms");
    }

    { // run summary
        nlohmann::ordered_json j;
        j["kind"] = "run-summary";
        j["solver"] = cfg.solver == SolverChoice::U ? "u" : (cfg.solver == SolverChoice::W ? "w" : "both");
        if (art.report_u) j["report_u"] = report_json(*art.report_u);
        if (art.report_w) j["report_w"] = report_json(*art.report_w);
        if (run_u_solver && run_w_solver) j["cross_check_max_rel_dev"] = art.cross_check_max_dev;
        j["checks"] = art.checks.size();
        j["all_checks_pass"] = art.all_checks_pass;
        std::ofstream f(out_dir / "summary.json", std::ios::binary);
        f << j.dump(2) << "\n";
    }

    plot_run_dir(out_dir);
    return art;
}

Table run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                const fs::path& out_dir, std::ostream& log) {
    for (const auto& ax : axes) {
        if (ax.name != "kappa" && ax.name != "mu" && ax.name != "n" && ax.name != "gamma" &&
            ax.name != "cells")
            throw config_error("sweep: unsupported axis '" + ax.name + "'");
    }
    fs::create_directories(out_dir);

    // Cartesian product, row-major in axis order.
    std::vector<std::map<std::string, double>> cells_list;
    cells_list.emplace_back();
    for (const auto& ax : axes) {
        std::vector<std::map<std::string, double>> next;
        for (const auto& partial : cells_list)
            for (double v : ax.values) {
                auto m = partial;
                m[ax.name] = v;
                next.push_back(std::move(m));
            }
        cells_list = std::move(next);
    }
    if (axes.empty()) cells_list.clear();

    struct CellResult {
        std::map<std::string, double> point;
        bool ok = false;
        std::string status;
        bool detected = false;
        double T_hat = 0.0;
        double min_margin = 0.0;
    };
    std::vector<CellResult> results(cells_list.size());

    std::atomic<std::size_t> next_cell{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t k = next_cell.fetch_add(1);
            if (k >= cells_list.size()) return;
            CellResult& res = results[k];
            res.point = cells_list[k];
            try {
                RunConfig cfg = base;
                for (const auto& [name, v] : res.point) {
                    if (name == "kappa") cfg.model.kappa = v;
                    else if (name == "mu") cfg.model.mu = v;
                    else if (name == "n") cfg.model.n = static_cast<int>(v);
                    else if (name == "gamma") cfg.gamma = v;
                    else if (name == "cells") cfg.cells = cfg.s_cells = static_cast<std::size_t>(v);
                }
                std::ostringstream dir;
                dir << "cell_" << std::setw(4) << std::setfill('0') << k;
                RunArtifacts art = run_experiment(cfg, out_dir / dir.str());
                const BlowupReport& rep = art.report_u ? *art.report_u : *art.report_w;
                res.ok = true;
                res.status = art.all_checks_pass ? "ok" : "check-failure";
                res.detected = rep.detected;
                res.T_hat = rep.detected ? rep.T_hat : 0.0;
                double mm = std::numeric_limits<double>::infinity();
                for (const auto& c : art.checks) mm = std::min(mm, c.margin);
                res.min_margin = art.checks.empty() ? 0.0 : mm;
            } catch (const std::exception& e) {
                res.ok = false;
                res.status = std::string("error: ") + e.what();
            }
        }
    };
    const unsigned workers = worker_count(cells_list.size());
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    Table summary({"cell", "n", "kappa", "mu", "gamma", "cells", "detected", "T_hat",
                   "min_margin", "status"});
    for (std::size_t k = 0; k < results.size(); ++k) {
        const auto& r = results[k];
        auto value_or = [&](const std::string& name, double dflt) {
            const auto it = r.point.find(name);
            return it == r.point.end() ? dflt : it->second;
        };
        summary.add_row({static_cast<long>(k), value_or("n", base.model.n),
                         value_or("kappa", base.model.kappa), value_or("mu", base.model.mu),
                         value_or("gamma", base.gamma), value_or("cells", static_cast<double>(base.cells)),
                         std::string(r.detected ? "yes" : "no"), r.T_hat, r.min_margin, r.status});
        log << "cell " << k << ": " << r.status << (r.detected ? " (blow-up)" : "") << "\n";
    }
    summary.write(out_dir / "summary.csv", "sweep summary, one row per parameter cell");
    return summary;
}

bool verify_run_dir(const fs::path& dir, std::ostream& log) {
    const RunConfig cfg = parse_config(dir / "config.txt");
    const Regime regime = validate_parameters(cfg.model);

    std::optional<BlowupCertificate> cert;
    if (cfg.certificate || cfg.datum_r1_auto) cert = certify(cfg.model);
    const DiagnosticsPlan plan = resolve_diagnostics(cfg, cert);
    (void)regime;

    bool all_pass = true;
    std::size_t n_checks = 0;
    auto note = [&](const CheckResult& c) {
        ++n_checks;
        if (!c.pass) {
            all_pass = false;
            log << "  FAIL " << c.name << " at t=" << c.time << " margin=" << c.margin << "\n";
        }
    };

    const double surface = cfg.model.n * unit_ball_volume(cfg.model.n);

    // Rebuild w snapshots from the persisted long-form tables.
    auto load_w = [&](const fs::path& file) {
        std::vector<WState> snaps;
        if (!fs::exists(file)) return snaps;
        Table t = Table::read_csv(file);
        WState cur;
        cur.grid = cfg.make_s_grid();
        double cur_t = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t r = 0; r < t.rows(); ++r) {
            const double tt = t.number(r, "t");
            if (tt != cur_t) {
                if (!cur.w.empty()) snaps.push_back(cur);
                cur.w.clear();
                cur.t = cur_t = tt;
            }
            cur.w.push_back(t.number(r, "w"));
        }
        if (!cur.w.empty()) snaps.push_back(cur);
        return snaps;
    };
    auto load_u = [&](const fs::path& file) {
        std::vector<RadialProfile> snaps;
        std::vector<double> times;
        if (!fs::exists(file)) return std::make_pair(snaps, times);
        Table t = Table::read_csv(file);
        RadialProfile cur;
        cur.grid = cfg.make_radial_grid();
        double cur_t = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t r = 0; r < t.rows(); ++r) {
            const double tt = t.number(r, "t");
            if (tt != cur_t) {
                if (!cur.values.empty()) {
                    snaps.push_back(cur);
                    times.push_back(cur_t);
                }
                cur.values.clear();
                cur_t = tt;
            }
            cur.values.push_back(t.number(r, "u"));
        }
        if (!cur.values.empty()) {
            snaps.push_back(cur);
            times.push_back(cur_t);
        }
        return std::make_pair(snaps, times);
    };

    const SGrid sgrid = cfg.make_s_grid();
    auto [usnaps, utimes] = load_u(dir / "profiles_u.csv");
    std::vector<WState> wsnaps = load_w(dir / "profiles_w.csv");

    auto functional_pass = [&](const WState& w, double t) {
        if (plan.gamma <= 0.0) return;
        for (double s0 : plan.s0) {
            FunctionalSample f = compute_I_terms(w, cfg.model, plan.gamma, s0);
            f.t = t;
            std::vector<CheckResult> fc;
            run_functional_checks(f, cfg.model, fc);
            for (const auto& c : fc) note(c);
        }
    };

    for (std::size_t k = 0; k < usnaps.size(); ++k) {
        CheckResult mono = check_monotone(usnaps[k]);
        mono.time = utimes[k];
        note(mono);
        WState w = u_to_w(usnaps[k], sgrid);
        w.t = utimes[k];
        note(check_ws_estimate(w));
        functional_pass(w, utimes[k]);
    }
    for (const auto& w : wsnaps) {
        note(check_w_monotone(w));
        note(check_ws_estimate(w));
        functional_pass(w, w.t);
    }

    // Mass bound from the persisted time series.
    for (const char* name : {"timeseries_u.csv", "timeseries_w.csv"}) {
        const fs::path file = dir / name;
        if (!fs::exists(file)) continue;
        Table t = Table::read_csv(file);
        std::vector<std::pair<double, double>> series;
        for (std::size_t r = 0; r < t.rows(); ++r)
            series.emplace_back(t.number(r, "t"), t.number(r, "total_mass"));
        if (series.empty()) continue;
        note(check_mass_bound(series, cfg.model));
        if (cfg.model.lambda == 0.0) note(check_mass_monotone(series, cfg.model));
    }

    if (cert && cfg.datum_r1_auto) {
        auto corroborate = [&](const std::vector<std::pair<double, double>>& series) {
            if (series.empty()) return;
            note(check_phi_level(series, cert->d3, cert->phi0));
            note(check_phi_riccati(series, cert->d1, cert->d2));
        };
        std::vector<std::pair<double, double>> su, sw;
        for (std::size_t k = 0; k < usnaps.size(); ++k)
            su.emplace_back(utimes[k], compute_phi(u_to_w(usnaps[k], sgrid), cert->chain.gamma, cert->s0));
        for (const auto& w : wsnaps)
            sw.emplace_back(w.t, compute_phi(w, cert->chain.gamma, cert->s0));
        corroborate(su);
        corroborate(sw);
    }
    (void)surface;

    log << "verify: " << n_checks << " checks re-evaluated, "
        << (all_pass ? "all pass" : "FAILURES present") << "\n";
    return all_pass;
}

void plot_run_dir(const fs::path& dir) {
    auto load_series = [&](const fs::path& file, const std::string& xcol, const std::string& ycol) {
        std::vector<std::pair<double, double>> out;
        if (!fs::exists(file)) return out;
        Table t = Table::read_csv(file);
        for (std::size_t r = 0; r < t.rows(); ++r)
            out.emplace_back(t.number(r, xcol), t.number(r, ycol));
        return out;
    };

    std::optional<BlowupCertificate> cert;
    if (fs::exists(dir / "config.txt")) {
        try {
            const RunConfig cfg = parse_config(dir / "config.txt");
            if (cfg.certificate || cfg.datum_r1_auto) cert = certify(cfg.model);
        } catch (const std::exception&) {
            // plotting works from tables alone
        }
    }

    { // max density vs time, log scale
        PlotSpec spec;
        spec.title = "max density";
        spec.x_label = "t";
        spec.y_label = "max u";
        spec.log_y = true;
        auto su = load_series(dir / "timeseries_u.csv", "t", "max_u");
        auto sw = load_series(dir / "timeseries_w.csv", "t", "max_u");
        if (!su.empty()) spec.series.push_back({"u-solver", "#1f6fb2", su, false});
        if (!sw.empty()) spec.series.push_back({"w-solver", "#b26f1f", sw, true});
        if (cert) spec.v_lines.push_back(cert->certified_bound);
        write_svg_plot(spec, dir / "max_u.svg");
    }

    { // moment functional with the comparison level and trajectory
        PlotSpec spec;
        spec.title = "moment functional";
        spec.x_label = "t";
        spec.y_label = "phi(s0, t)";
        auto sp = load_series(dir / "functionals.csv", "t", "phi");
        if (!sp.empty()) spec.series.push_back({"phi", "#1f6fb2", sp, false});
        if (cert && !sp.empty()) {
            const double d1 = cert->d1, d3 = cert->d3;
            const double phi0 = sp.front().second;
            std::vector<std::pair<double, double>> level, riccati;
            const double t_last = sp.back().first;
            const double cap = 10.0 * std::abs(sp.back().second) + 10.0 * std::abs(phi0);
            for (int k = 0; k <= 200; ++k) {
                const double t = t_last * k / 200.0;
                level.emplace_back(t, d3);
                if (phi0 > d3) {
                    // closed form of psi' = d1 (psi^2 - d3^2), psi(0) = phi0
                    const double C = (phi0 - d3) / (phi0 + d3);
                    const double e = C * std::exp(2.0 * d1 * d3 * t);
                    if (e < 1.0) {
                        const double psi = d3 * (1.0 + e) / (1.0 - e);
                        if (psi < cap) riccati.emplace_back(t, psi);
                    }
                }
            }
            spec.series.push_back({"d3 level", "#777777", level, true});
            if (!riccati.empty())
                spec.series.push_back({"comparison trajectory", "#b22222", riccati, true});
        }
        write_svg_plot(spec, dir / "phi.svg");
    }

    { // inequality margins over time
        PlotSpec spec;
        spec.title = "inequality margins";
        spec.x_label = "t";
        spec.y_label = "margin";
        if (fs::exists(dir / "inequalities.csv")) {
            Table t = Table::read_csv(dir / "inequalities.csv");
            std::map<std::string, std::vector<std::pair<double, double>>> by_name;
            for (std::size_t r = 0; r < t.rows(); ++r)
                by_name[t.text(r, "check")].emplace_back(t.number(r, "t"), t.number(r, "margin"));
            const char* colors[] = {"#1f6fb2", "#b26f1f", "#2e8b57", "#b22222",
                                    "#6a5acd", "#8b3a62", "#444444", "#0aa0a0"};
            std::size_t i = 0;
            for (auto& [name, pts] : by_name) {
                std::sort(pts.begin(), pts.end());
                spec.series.push_back({name, colors[i++ % 8], pts, false});
            }
        }
        write_svg_plot(spec, dir / "margins.svg");
    }
}

} // namespace kslab
