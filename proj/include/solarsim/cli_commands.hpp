#ifndef SOLARSIM_CLI_COMMANDS_HPP
#define SOLARSIM_CLI_COMMANDS_HPP

#include "solarsim/config.hpp"

#include <optional>
#include <ostream>
#include <string>

namespace solarsim {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitSolverError = 2;

struct SimulateOptions {
    std::string config_path;
    std::string out_path;
    int decimate = 0; ///< 0 = use the scenario's own setting
    std::optional<ThresholdPreset> preset;
};

struct IvSweepOptions {
    double irradiance_wm2 = 1000.0;
    double temp_c = 25.0;
    int points = 500;
    std::string out_path;
    std::string config_path; ///< optional: take the array from this scenario
};

struct MpptCompareOptions {
    std::string config_path;
    std::string out_path;
    int jobs = 1;
    std::optional<ThresholdPreset> preset;
};

/// Runs the scenario, writes the trace CSV and a resolved-config dump
/// (out_path + ".resolved.json"), prints a run summary.
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);

/// Writes a v,i,p curve CSV and prints the MPP.
int cmd_iv_sweep(const IvSweepOptions& opt, std::ostream& out, std::ostream& err);

/// Runs the scenario under P&O (standard), P&O (inverted) and IC, writes a
/// per-cycle comparison CSV and prints per-controller summaries.
int cmd_mppt_compare(const MpptCompareOptions& opt, std::ostream& out, std::ostream& err);

} // namespace solarsim

#endif
