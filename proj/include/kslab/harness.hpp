#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kslab/certificate.hpp"
#include "kslab/checks.hpp"
#include "kslab/config.hpp"
#include "kslab/functionals.hpp"
#include "kslab/table.hpp"
#include "kslab/usolver.hpp"
#include "kslab/wsolver.hpp"

namespace kslab {

/// Everything one experiment produced, plus where it was persisted.
struct RunArtifacts {
    RunConfig config;
    std::filesystem::path dir;
    std::optional<BlowupCertificate> certificate;
    std::optional<BlowupReport> report_u;
    std::optional<BlowupReport> report_w;
    std::vector<CheckResult> checks;
    std::vector<FunctionalSample> functionals;
    double cross_check_max_dev = 0.0; ///< solver "both": sup-norm deviation in w
    bool all_checks_pass = true;
};

/// Executes the configured solver(s), evaluates every applicable check over
/// the recorded snapshots, and persists config snapshot, tables, reports,
/// certificate and plots under out_dir.
RunArtifacts run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir);

struct SweepAxis {
    std::string name; ///< kappa | mu | n | gamma | cells
    std::vector<double> values;
};

/// Cartesian product of the axes over a base config; one run per cell,
/// executed on a worker pool (KSLAB_WORKERS bounds the pool). Each cell run
/// is single-threaded and deterministic; failures are reported per cell
/// without aborting the sweep. Returns the summary table that was written.
Table run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                const std::filesystem::path& out_dir, std::ostream& log);

/// Re-evaluates every inequality check from the persisted series of a run
/// directory. Returns true when all checks pass.
bool verify_run_dir(const std::filesystem::path& dir, std::ostream& log);

/// (Re)generates the SVG plots of a run directory from its persisted tables.
void plot_run_dir(const std::filesystem::path& dir);

} // namespace kslab
