#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nqsim/scenario.hpp"
#include "nqsim/x_model.hpp"

namespace nqsim {

/// Fully resolved description of one CLI invocation.
struct RunManifest {
    std::string command;  ///< simulate | couple | sweep | pasta | fcfs-equiv |
                          ///< replay-table1 | x-search
    ScenarioConfig scenario;
    XConfig xconfig;
    std::optional<ScriptedRun> script;  ///< from config-file sections

    std::string out_path;         ///< trace/sweep/report artifact ("" = none)
    std::string violations_path;  ///< violation JSONL ("" = none)

    int replications = 0;
    std::size_t samples = 0;
    bool negative_control = false;

    // sweep inputs
    std::vector<double> grid_values;  ///< axis values, used for both axes
    std::vector<double> thresholds;

    std::vector<std::uint64_t> seeds;  ///< x-search explicit seed list
};

/// Parses argv (program name excluded) into a manifest. Throws UsageError on
/// malformed or conflicting flags. `--help` requests are handled by run_cli.
RunManifest parse_args(const std::vector<std::string>& args);

/// Executes a manifest: runs the simulation(s), writes requested artifacts,
/// and prints a one-line summary. Returns the process exit code: 0 on
/// success, 1 when a check failed (or, for x-search, when no violation was
/// found). I/O problems throw IoError.
int execute(const RunManifest& manifest);

/// Full entry point with error mapping: 0 success, 1 failed check, 2 usage
/// error, 3 I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace nqsim
