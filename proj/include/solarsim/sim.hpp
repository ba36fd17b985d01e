#ifndef SOLARSIM_SIM_HPP
#define SOLARSIM_SIM_HPP

#include "solarsim/hydraulics.hpp"
#include "solarsim/mppt.hpp"
#include "solarsim/powertrain.hpp"
#include "solarsim/pv_model.hpp"
#include "solarsim/tracker.hpp"

#include <cstdint>
#include <vector>

namespace solarsim {

/// One knot of a piecewise-linear schedule.
struct ScheduleKnot {
    double t_s = 0.0;
    double value = 0.0;
};

/// Piecewise-linear schedule: linear between knots, first/last value held
/// outside the knot range. Knot times are strictly increasing.
using Schedule = std::vector<ScheduleKnot>;

double schedule_at(const Schedule& schedule, double t_s);

/// Scripted environment: irradiance, cell temperature, sun direction and the
/// elevation-axis target over time.
struct EnvProfile {
    Schedule irradiance_wm2;
    Schedule cell_temp_c;
    Schedule sun_azimuth_deg;
    Schedule sun_elevation_deg;
    Schedule elevation_target_mm;
};

struct EnvSample {
    double g_wm2 = 0.0;
    double cell_temp_k = 0.0;
    double sun_azimuth_deg = 0.0;
    double sun_elevation_deg = 0.0;
    double elevation_target_mm = 0.0;
};

EnvSample env_at(const EnvProfile& profile, double t_s);

/// Tracker parameters grouped for the scenario.
struct TrackerConfig {
    StepperSpec stepper;
    LdrModel ldr;
    double decide_tolerance_counts = 20.0;
    double tilt_rate_deg_s = 18.0;
    double elevation_rate_mm_s = 5.0;
    double elevation_stroke_mm = 100.0;
};

/// Pump electrical/hydraulic ratings.
struct PumpConfig {
    double max_flow_lpm = 4.0;
    double max_speed_rpm = 3500.0;
    double rated_current_a = 3.0; ///< battery draw at full duty
};

struct SoilDynamics {
    double k_soil_per_l = 0.02;  ///< moisture gain per delivered liter
    double k_evap_per_s = 2e-4;  ///< exponential drying rate
};

/// Full closed-loop state at one time step.
struct WorldState {
    BatteryState battery;
    TankState tank1;
    TankState tank2;
    SoilState soil;
    PumpState pump1;
    PumpState pump2;
    TrackerPose pose;
    MpptState mppt;
    bool loads_connected = true; ///< charge-relay (low-voltage disconnect) state
};

/// Everything needed to reproduce a run.
struct Scenario {
    double duration_s = 600.0;
    double dt_s = 0.1;
    int mppt_period_steps = 10;      ///< controller updates once per this many steps
    std::uint64_t seed = 1;
    int decimate = 1;                ///< trace decimation for CSV output

    EnvProfile env;
    WorldState initial;
    PvArraySpec array;
    MpptConfig mppt;
    MpptAlgorithm algorithm = MpptAlgorithm::PerturbObserve;
    ConverterKind converter = ConverterKind::IdealBuck;
    ChargeRelayConfig charge_relay;
    ThresholdConfig thresholds;
    TrackerConfig tracker;
    PumpConfig pump1;
    PumpConfig pump2;
    SoilDynamics soil;
};

/// One observable row, matching the CSV column order exactly.
struct TraceRecord {
    double time_s = 0.0;
    double g_wm2 = 0.0;       ///< plane-of-array irradiance
    double t_k = 0.0;
    double panel_v = 0.0;
    double panel_i = 0.0;
    double panel_p = 0.0;
    double v_ref = 0.0;
    double duty = 0.0;        ///< converter duty
    double soc_pct = 0.0;
    double batt_v = 0.0;
    double tank1_pct = 0.0;
    double tank2_pct = 0.0;
    double soil_raw = 0.0;
    double soil_pct = 0.0;
    int pump1_relay = 0;
    double pump1_duty = 0.0;
    double pump1_rpm = 0.0;
    int pump2_relay = 0;
    double pump2_duty = 0.0;
    double pump2_rpm = 0.0;
    double azimuth_deg = 0.0;
    double tilt_deg = 0.0;
    double elevation_mm = 0.0;
    double curtailed_wh = 0.0; ///< cumulative charge rejected at full battery
};

/// Cumulative ledgers kept alongside the trace for conservation checks.
struct RunLedger {
    double delivered_to_soil_l = 0.0;
    double curtailed_wh = 0.0;
    double panel_energy_wh = 0.0;
    double load_energy_wh = 0.0;
};

struct RunResult {
    std::vector<TraceRecord> records;
    RunLedger ledger;
    WorldState final_state;
};

/// Advances one fixed step. Controllers read the previous step's physical
/// state; the returned record carries the post-step observables.
/// `step_index` drives the MPPT cadence and the LDR noise seed.
struct SimEngine {
    explicit SimEngine(const Scenario& scenario);

    TraceRecord step(WorldState& world, std::int64_t step_index);

    const Scenario& scenario;
    RunLedger ledger;
};

/// Runs the scenario start to finish: ceil(duration/dt) steps, deterministic
/// for a fixed scenario (including the seed).
RunResult run(const Scenario& scenario);

} // namespace solarsim

#endif
