#ifndef SOLARSIM_CONFIG_HPP
#define SOLARSIM_CONFIG_HPP

#include "solarsim/sim.hpp"

#include <string>

namespace solarsim {

/// Named threshold presets; SystemModel is the default set (tank 10/85,
/// soil 500/750 counts), Results is the alternate tank 20/90 set.
enum class ThresholdPreset { SystemModel, Results };

/// The fully documented default scenario. Every field of the returned value
/// is echoed by scenario_to_json, so the resolved dump doubles as the
/// reference for all defaults.
Scenario default_scenario();

void apply_threshold_preset(Scenario& scenario, ThresholdPreset preset);

/// Parses a JSON scenario document. Unknown keys are rejected with their
/// full path; missing keys keep their defaults. Throws ConfigError.
Scenario scenario_from_json_text(const std::string& text);

Scenario load_scenario_file(const std::string& path);

/// Serializes the complete resolved scenario, defaults included. Feeding the
/// dump back through scenario_from_json_text reproduces the identical run.
std::string scenario_to_json_text(const Scenario& scenario);

/// Checks every cross-field invariant; throws ConfigError naming the
/// violated invariant.
void validate_scenario(const Scenario& scenario);

} // namespace solarsim

#endif
