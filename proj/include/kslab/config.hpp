#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kslab/initial_data.hpp"
#include "kslab/params.hpp"
#include "kslab/usolver.hpp"

namespace kslab {

/// Which solver(s) a run executes.
enum class SolverChoice { U, W, Both };

/// Complete, validated description of one experiment. Parsed from a flat
/// key = value text format with [section] headers; unknown keys are errors.
struct RunConfig {
    ModelParameters model;
    InitialDatumSpec datum;
    bool datum_r1_auto = false; ///< take r1 from the certificate

    std::size_t cells = 1024;
    std::string grading = "uniform";   ///< uniform | geometric
    double grading_ratio = 1.0;        ///< first/last cell ratio for geometric
    std::size_t s_cells = 1024;
    std::string s_grading = "power";   ///< power | uniform
    double s_power = 0.0;              ///< 0 selects p = n

    StepControl control;
    SolverChoice solver = SolverChoice::U;
    double record_interval = 1e-3;

    bool diagnostics = true;
    double gamma = 0.0;                ///< 0 selects the regime gamma
    std::vector<double> s0_list;       ///< empty selects the certificate / default cutoff
    bool certificate = false;

    std::string raw_text; ///< byte-identical snapshot of the parsed file

    RadialGrid make_radial_grid() const;
    SGrid make_s_grid() const;
};

/// Parses and validates; throws config_error with file/line/field context.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

} // namespace kslab
