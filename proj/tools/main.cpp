#include "solarsim/cli_commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"solarsim: closed-loop simulator of a solar-tracked PV water-pumping system"};
    app.require_subcommand(1);

    const std::map<std::string, solarsim::ThresholdPreset> preset_map{
        {"system-model", solarsim::ThresholdPreset::SystemModel},
        {"results", solarsim::ThresholdPreset::Results}};

    solarsim::SimulateOptions sim_opt;
    auto* simulate = app.add_subcommand("simulate", "run a scenario and write the trace CSV");
    simulate->add_option("--config", sim_opt.config_path, "scenario config file (JSON)")
        ->required();
    simulate->add_option("--out", sim_opt.out_path, "output trace CSV path")->required();
    simulate->add_option("--decimate", sim_opt.decimate,
                         "keep every n-th record (overrides the scenario setting)");
    simulate
        ->add_option("--preset", sim_opt.preset, "threshold preset")
        ->transform(CLI::CheckedTransformer(preset_map, CLI::ignore_case));

    solarsim::IvSweepOptions iv_opt;
    auto* sweep = app.add_subcommand("iv-sweep", "sweep the array IV/PV curve and report the MPP");
    sweep->add_option("--config", iv_opt.config_path,
                      "optional scenario config; its array section replaces the default panel");
    sweep->add_option("--g", iv_opt.irradiance_wm2, "plane-of-array irradiance (W/m^2)")
        ->capture_default_str();
    sweep->add_option("--temp-c", iv_opt.temp_c, "cell temperature (degC)")->capture_default_str();
    sweep->add_option("--points", iv_opt.points, "sweep point count")->capture_default_str();
    sweep->add_option("--out", iv_opt.out_path, "output curve CSV path")->required();

    solarsim::MpptCompareOptions cmp_opt;
    auto* compare = app.add_subcommand(
        "mppt-compare", "run the scenario under P&O (standard/inverted) and IC side by side");
    compare->add_option("--config", cmp_opt.config_path, "scenario config file (JSON)")
        ->required();
    compare->add_option("--out", cmp_opt.out_path, "output comparison CSV path")->required();
    compare->add_option("--jobs", cmp_opt.jobs, "run the three variants in parallel when > 1")
        ->capture_default_str();
    compare
        ->add_option("--preset", cmp_opt.preset, "threshold preset")
        ->transform(CLI::CheckedTransformer(preset_map, CLI::ignore_case));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : solarsim::kExitConfigError;
    }

    if (simulate->parsed()) return solarsim::cmd_simulate(sim_opt, std::cout, std::cerr);
    if (sweep->parsed()) return solarsim::cmd_iv_sweep(iv_opt, std::cout, std::cerr);
    if (compare->parsed()) return solarsim::cmd_mppt_compare(cmp_opt, std::cout, std::cerr);
    return 0;
}
