#include "solarsim/hydraulics.hpp"

#include "solarsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace solarsim {

namespace {
constexpr double kFullScaleCounts = 1023.0;
}

double soil_raw_counts(const SoilState& soil) {
    return kFullScaleCounts * (1.0 - soil.moisture_fraction);
}

double soil_pct(const SoilState& soil) {
    return 100.0 * soil.moisture_fraction;
}

double soil_counts_to_pct(double raw) {
    return 100.0 * (1.0 - raw / kFullScaleCounts);
}

UltrasonicReading ultrasonic_level(const TankState& tank) {
    const double fill = tank.volume_l / tank.capacity_l;
    return {tank.height_m * (1.0 - fill), 100.0 * fill};
}

bool pump1_controller(double level_pct, bool relay_on, const ThresholdConfig& cfg) {
    if (level_pct < cfg.tank_on_pct) return true;
    if (level_pct >= cfg.tank_off_pct) return false;
    return relay_on;
}

SoilClass soil_class(double raw_counts, const ThresholdConfig& cfg) {
    if (raw_counts < cfg.soil_wet_counts) return SoilClass::Wet;
    if (raw_counts > cfg.soil_dry_counts) return SoilClass::Dry;
    return SoilClass::Humid;
}

bool pump2_controller(const SoilState& soil, bool relay_on, const ThresholdConfig& cfg) {
    switch (soil_class(soil_raw_counts(soil), cfg)) {
    case SoilClass::Dry: return true;
    case SoilClass::Wet: return false;
    case SoilClass::Humid: return relay_on;
    }
    return relay_on;
}

double pump_duty(double measure_pct, bool relay_on, double taper_start_pct, double off_pct) {
    if (!relay_on) return 0.0;
    if (measure_pct <= taper_start_pct) return 1.0;
    const double t = (measure_pct - taper_start_pct) / (off_pct - taper_start_pct);
    return std::clamp(1.0 - 0.5 * t, 0.5, 1.0);
}

double pump_speed_rpm(const PumpState& pump) {
    return pump.relay_on ? pump.duty * pump.max_speed_rpm : 0.0;
}

double pump_flow_lpm(const PumpState& pump) {
    return (pump_speed_rpm(pump) / pump.max_speed_rpm) * pump.max_flow_lpm;
}

int pwm_wave(double duty, double freq_hz, double t_s) {
    if (freq_hz <= 0.0) throw DomainError("pwm_wave: frequency must be positive");
    const double phase = t_s * freq_hz;
    const double frac = phase - std::floor(phase);
    return frac < duty ? 1 : 0;
}

HydraulicsResult hydraulics_step(const TankState& tank1, const TankState& tank2,
                                 const SoilState& soil, const PumpState& pump1,
                                 const PumpState& pump2, double k_soil_per_l,
                                 double k_evap_per_s, double dt_s) {
    HydraulicsResult out;
    out.tank1 = tank1;
    out.tank2 = tank2;
    out.soil = soil;

    // Pump 1: tank 1 -> tank 2, limited by the source volume and free space.
    const double want1 = pump_flow_lpm(pump1) / 60.0 * dt_s;
    const double free2 = tank2.capacity_l - tank2.volume_l;
    out.moved_l = std::min({want1, tank1.volume_l, free2});
    out.tank1.volume_l -= out.moved_l;
    out.tank2.volume_l += out.moved_l;

    // Pump 2: tank 2 -> soil, limited by what is left in tank 2.
    const double want2 = pump_flow_lpm(pump2) / 60.0 * dt_s;
    out.delivered_l = std::min(want2, out.tank2.volume_l);
    out.tank2.volume_l -= out.delivered_l;

    out.soil.moisture_fraction += k_soil_per_l * out.delivered_l;
    out.soil.moisture_fraction *= std::exp(-k_evap_per_s * dt_s);
    out.soil.moisture_fraction = std::clamp(out.soil.moisture_fraction, 0.0, 1.0);

    out.tank1.volume_l = std::clamp(out.tank1.volume_l, 0.0, tank1.capacity_l);
    out.tank2.volume_l = std::clamp(out.tank2.volume_l, 0.0, tank2.capacity_l);
    return out;
}

} // namespace solarsim
