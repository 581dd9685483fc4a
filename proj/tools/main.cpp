// Command-line front end: simulate / certify / sweep / verify / plot.
// Exit codes: 0 all checks pass, 1 check failure, 2 usage or config error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kslab/certificate.hpp"
#include "kslab/config.hpp"
#include "kslab/errors.hpp"
#include "kslab/harness.hpp"
#include "kslab/table.hpp"

namespace fs = std::filesystem;

namespace {

int do_simulate(const std::string& config_path, const std::string& out) {
    const kslab::RunConfig cfg = kslab::parse_config(config_path);
    const fs::path dir = out.empty() ? fs::path(fs::path(config_path).stem().string() + "_run") : fs::path(out);
    const kslab::RunArtifacts art = kslab::run_experiment(cfg, dir);
    std::cout << "run directory: " << dir.string() << "\n";
    if (art.report_u)
        std::cout << "u-solver: " << art.report_u->reason
                  << (art.report_u->detected ? " (T_hat = " + kslab::format_double(art.report_u->T_hat) + ")" : "")
                  << ", steps = " << art.report_u->steps << "\n";
    if (art.report_w)
        std::cout << "w-solver: " << art.report_w->reason
                  << (art.report_w->detected ? " (T_hat = " + kslab::format_double(art.report_w->T_hat) + ")" : "")
                  << ", steps = " << art.report_w->steps << "\n";
    if (art.report_u && art.report_w)
        std::cout << "cross-check max relative deviation: "
                  << kslab::format_double(art.cross_check_max_dev) << "\n";
    std::size_t failures = 0;
    for (const auto& c : art.checks)
        if (!c.pass) ++failures;
    std::cout << art.checks.size() << " checks, " << failures << " failures\n";
    return art.all_checks_pass ? 0 : 1;
}

int do_certify(const std::string& config_path, const std::string& out) {
    const kslab::RunConfig cfg = kslab::parse_config(config_path);
    const kslab::BlowupCertificate cert = kslab::certify(cfg.model);
    const std::string doc = kslab::certificate_to_json(cert);
    if (out.empty()) {
        std::cout << doc;
    } else {
        std::ofstream f(out, std::ios::binary);
        f << doc;
        std::cout << "certificate written to " << out << "\n";
    }
    std::cout << "certified bound: T_max <= " << kslab::format_double(cert.certified_bound)
              << " (margin " << kslab::format_double(cert.margin) << ", r1 "
              << kslab::format_double(cert.r1) << ")\n";
    return 0;
}

std::vector<kslab::SweepAxis> parse_axes(const std::vector<std::string>& specs) {
    std::vector<kslab::SweepAxis> axes;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw kslab::config_error("axis must look like name=v1,v2,... (got '" + spec + "')");
        kslab::SweepAxis ax;
        ax.name = spec.substr(0, eq);
        std::string rest = spec.substr(eq + 1);
        std::size_t pos = 0;
        while (pos <= rest.size() && !rest.empty()) {
            const auto comma = rest.find(',', pos);
            const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!tok.empty()) ax.values.push_back(std::stod(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        axes.push_back(std::move(ax));
    }
    return axes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial aggregation-diffusion laboratory: simulation, inequality "
                 "verification and blow-up certificates"};
    app.require_subcommand(1);
    bool deterministic = true;
    app.add_flag("--deterministic", deterministic,
                 "fixed summation order and replay-stable output (default and only mode)");

    std::string config_path, out_path, run_dir;
    std::vector<std::string> axis_specs;

    auto* sim = app.add_subcommand("simulate", "run the configured solver(s) and checks");
    sim->add_option("config", config_path, "run configuration file")->required();
    sim->add_option("--out", out_path, "output directory");

    auto* cert = app.add_subcommand("certify", "emit a blow-up certificate for the configured model");
    cert->add_option("config", config_path, "run configuration file")->required();
    cert->add_option("--out", out_path, "certificate file (stdout when omitted)");

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("config", config_path, "template configuration file")->required();
    sweep->add_option("--axis", axis_specs, "axis, e.g. kappa=1.8,2.0,2.2 (repeatable)")
        ->required()
        ->take_all();
    sweep->add_option("--out", out_path, "output directory");

    auto* verify = app.add_subcommand("verify", "re-evaluate all checks from a persisted run");
    verify->add_option("run_dir", run_dir, "run directory")->required();

    auto* plot = app.add_subcommand("plot", "regenerate plots from a persisted run");
    plot->add_option("run_dir", run_dir, "run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return do_simulate(config_path, out_path);
        if (cert->parsed()) return do_certify(config_path, out_path);
        if (sweep->parsed()) {
            const kslab::RunConfig base = kslab::parse_config(config_path);
            const fs::path dir = out_path.empty()
                                     ? fs::path(fs::path(config_path).stem().string() + "_sweep")
                                     : fs::path(out_path);
            const kslab::Table summary = kslab::run_sweep(base, parse_axes(axis_specs), dir, std::cout);
            std::cout << "sweep summary: " << (dir / "summary.csv").string() << " ("
                      << summary.rows() << " rows)\n";
            return 0;
        }
        if (verify->parsed())
            return kslab::verify_run_dir(run_dir, std::cout) ? 0 : 1;
        if (plot->parsed()) {
            kslab::plot_run_dir(run_dir);
            std::cout << "plots written to " << run_dir << "\n";
            return 0;
        }
    } catch (const kslab::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const kslab::invalid_field_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
