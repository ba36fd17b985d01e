#include "solarsim/sim.hpp"

#include "solarsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace solarsim {

double schedule_at(const Schedule& schedule, double t_s) {
    if (schedule.empty()) throw DomainError("schedule_at: empty schedule");
    if (t_s <= schedule.front().t_s) return schedule.front().value;
    if (t_s >= schedule.back().t_s) return schedule.back().value;
    for (size_t k = 1; k < schedule.size(); ++k) {
        const auto& a = schedule[k - 1];
        const auto& b = schedule[k];
        if (t_s == b.t_s) return b.value; // exact at knots
        if (t_s < b.t_s)
            return a.value + (b.value - a.value) * (t_s - a.t_s) / (b.t_s - a.t_s);
    }
    return schedule.back().value;
}

EnvSample env_at(const EnvProfile& profile, double t_s) {
    EnvSample s;
    s.g_wm2 = schedule_at(profile.irradiance_wm2, t_s);
    s.cell_temp_k = schedule_at(profile.cell_temp_c, t_s) + 273.15;
    s.sun_azimuth_deg = schedule_at(profile.sun_azimuth_deg, t_s);
    s.sun_elevation_deg = schedule_at(profile.sun_elevation_deg, t_s);
    s.elevation_target_mm = schedule_at(profile.elevation_target_mm, t_s);
    return s;
}

namespace {

std::uint64_t step_noise_seed(std::uint64_t scenario_seed, std::int64_t step_index) {
    return scenario_seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(step_index + 1));
}

double converter_duty_for_trace(double panel_v, double v_bus, ConverterKind kind) {
    if (panel_v <= 0.0) return 0.0;
    try {
        return duty_for_target(panel_v, v_bus, kind);
    } catch (const Unachievable&) {
        // Out of the topology's range: pinned at the nearer duty rail.
        return kind == ConverterKind::IdealBuck ? 0.99 : 0.0;
    }
}

} // namespace

SimEngine::SimEngine(const Scenario& s) : scenario(s), ledger{} {}

TraceRecord SimEngine::step(WorldState& world, std::int64_t step_index) {
    const Scenario& sc = scenario;
    const double dt = sc.dt_s;
    const double t = static_cast<double>(step_index) * dt;

    // (1) environment sample
    const EnvSample env = env_at(sc.env, t);
    const SunModel sun{env.sun_azimuth_deg, env.sun_elevation_deg, env.g_wm2};

    // (2) tracker loop
    const LdrQuad quad = ldr_readings(sun, world.pose, sc.tracker.stepper, sc.tracker.ldr,
                                      step_noise_seed(sc.seed, step_index));
    const MotionCommand cmd = tracker_decide(quad, sc.tracker.decide_tolerance_counts);
    world.pose = stepper_step(world.pose, cmd, sc.tracker.stepper, sc.tracker.tilt_rate_deg_s, dt);
    world.pose = elevation_step(world.pose, env.elevation_target_mm,
                                sc.tracker.elevation_rate_mm_s, dt,
                                sc.tracker.elevation_stroke_mm);

    // (3) panel operating point at the converter-imposed voltage
    const double poa_wm2 = env.g_wm2 * panel_alignment(world.pose, sun, sc.tracker.stepper);
    const OperatingEnv op_env{poa_wm2, env.cell_temp_k};
    const double panel_v = std::clamp(world.mppt.v_ref, 0.0, sc.mppt.v_max);
    // Blocking diode: reverse current into the panel is not allowed.
    const double panel_i = std::max(0.0, array_current(sc.array, op_env, panel_v));
    const double panel_p = panel_v * panel_i;

    // (4) MPPT update at the controller cadence
    if (step_index % sc.mppt_period_steps == 0) {
        world.mppt = (sc.algorithm == MpptAlgorithm::PerturbObserve)
                         ? po_step(world.mppt, panel_v, panel_i, sc.mppt)
                         : ic_step(world.mppt, panel_v, panel_i, sc.mppt);
    }

    // (5) relay logic and pump duties, reading the previous step's sensors
    world.loads_connected = charge_relay(world.battery, sc.charge_relay, world.loads_connected);

    const double level2_pct = ultrasonic_level(world.tank2).level_pct;
    const bool relay1 = world.loads_connected &&
                        pump1_controller(level2_pct, world.pump1.relay_on, sc.thresholds);
    const double duty1 =
        pump_duty(level2_pct, relay1, sc.thresholds.taper_start_tank_pct, sc.thresholds.tank_off_pct);

    const bool relay2 = world.loads_connected &&
                        pump2_controller(world.soil, world.pump2.relay_on, sc.thresholds);
    const double duty2 = pump_duty(soil_pct(world.soil), relay2,
                                   soil_counts_to_pct(sc.thresholds.taper_start_soil_counts),
                                   soil_counts_to_pct(sc.thresholds.soil_wet_counts));

    world.pump1.relay_on = relay1;
    world.pump1.duty = duty1;
    world.pump1.max_flow_lpm = sc.pump1.max_flow_lpm;
    world.pump1.max_speed_rpm = sc.pump1.max_speed_rpm;
    world.pump2.relay_on = relay2;
    world.pump2.duty = duty2;
    world.pump2.max_flow_lpm = sc.pump2.max_flow_lpm;
    world.pump2.max_speed_rpm = sc.pump2.max_speed_rpm;

    // (6) water mass balance
    const HydraulicsResult hyd =
        hydraulics_step(world.tank1, world.tank2, world.soil, world.pump1, world.pump2,
                        sc.soil.k_soil_per_l, sc.soil.k_evap_per_s, dt);
    world.tank1 = hyd.tank1;
    world.tank2 = hyd.tank2;
    world.soil = hyd.soil;
    ledger.delivered_to_soil_l += hyd.delivered_l;

    // (7) battery update: converter charge current minus pump draws
    const double i_charge = panel_p / world.battery.v_nominal;
    const double i_loads =
        duty1 * sc.pump1.rated_current_a + duty2 * sc.pump2.rated_current_a;
    const BatteryStepResult batt = battery_step(world.battery, i_charge - i_loads, dt);
    world.battery = batt.state;
    ledger.curtailed_wh += batt.curtailed_ah * world.battery.v_nominal;
    ledger.panel_energy_wh += panel_p * dt / 3600.0;
    ledger.load_energy_wh += i_loads * world.battery.v_nominal * dt / 3600.0;

    // (8) emit the post-step record
    TraceRecord rec;
    rec.time_s = t;
    rec.g_wm2 = poa_wm2;
    rec.t_k = env.cell_temp_k;
    rec.panel_v = panel_v;
    rec.panel_i = panel_i;
    rec.panel_p = panel_p;
    rec.v_ref = world.mppt.v_ref;
    rec.duty = converter_duty_for_trace(panel_v, world.battery.v_nominal, sc.converter);
    rec.soc_pct = world.battery.soc_pct;
    rec.batt_v = terminal_voltage(world.battery, i_loads - i_charge);
    rec.tank1_pct = ultrasonic_level(world.tank1).level_pct;
    rec.tank2_pct = ultrasonic_level(world.tank2).level_pct;
    rec.soil_raw = soil_raw_counts(world.soil);
    rec.soil_pct = soil_pct(world.soil);
    rec.pump1_relay = world.pump1.relay_on ? 1 : 0;
    rec.pump1_duty = world.pump1.duty;
    rec.pump1_rpm = pump_speed_rpm(world.pump1);
    rec.pump2_relay = world.pump2.relay_on ? 1 : 0;
    rec.pump2_duty = world.pump2.duty;
    rec.pump2_rpm = pump_speed_rpm(world.pump2);
    rec.azimuth_deg = azimuth_deg(world.pose, sc.tracker.stepper);
    rec.tilt_deg = world.pose.tilt_deg;
    rec.elevation_mm = world.pose.elevation_mm;
    rec.curtailed_wh = ledger.curtailed_wh;
    return rec;
}

RunResult run(const Scenario& scenario) {
    const auto n_steps = static_cast<std::int64_t>(
        std::ceil(scenario.duration_s / scenario.dt_s - 1e-9));

    RunResult result;
    result.records.reserve(static_cast<size_t>(std::max<std::int64_t>(n_steps, 0)));
    result.final_state = scenario.initial;

    SimEngine engine(scenario);
    for (std::int64_t k = 0; k < n_steps; ++k) {
        try {
            result.records.push_back(engine.step(result.final_state, k));
        } catch (const NoConvergence& e) {
            throw NoConvergence(std::string(e.what()) + " (at step " + std::to_string(k) + ")");
        }
    }
    result.ledger = engine.ledger;
    return result;
}

} // namespace solarsim
