#ifndef SOLARSIM_HYDRAULICS_HPP
#define SOLARSIM_HYDRAULICS_HPP

namespace solarsim {

struct TankState {
    double volume_l = 0.0;
    double capacity_l = 13.8;
    double height_m = 0.30; ///< for the ultrasonic distance geometry
};

/// Soil moisture carried as a fraction; the raw sensor count follows the
/// fixed mapping raw = 1023 * (1 - moisture_fraction).
struct SoilState {
    double moisture_fraction = 0.0; ///< 0..1
};

struct PumpState {
    bool relay_on = false;
    double duty = 0.0;           ///< 0..1
    double max_flow_lpm = 4.0;   ///< flow at full speed (L/min)
    double max_speed_rpm = 3500.0;
};

enum class SoilClass { Wet, Humid, Dry };

/// On/off and tapering thresholds for both pumps.
struct ThresholdConfig {
    double tank_on_pct = 10.0;
    double tank_off_pct = 85.0;
    double soil_wet_counts = 500.0;
    double soil_dry_counts = 750.0;
    double taper_start_tank_pct = 60.0;
    double taper_start_soil_counts = 511.5; ///< raw-count equivalent of 50% soil moisture
};

struct UltrasonicReading {
    double distance_m = 0.0; ///< sensor face to water surface
    double level_pct = 0.0;
};

struct HydraulicsResult {
    TankState tank1;
    TankState tank2;
    SoilState soil;
    double moved_l = 0.0;     ///< tank 1 -> tank 2 this step
    double delivered_l = 0.0; ///< tank 2 -> soil this step
};

double soil_raw_counts(const SoilState& soil);
double soil_pct(const SoilState& soil);

/// Raw-count to percent mapping: 100 * (1 - raw/1023).
double soil_counts_to_pct(double raw);

/// Echo-distance level measurement from tank geometry.
UltrasonicReading ultrasonic_level(const TankState& tank);

/// Tank-refill pump hysteresis: on below tank_on_pct, off at/above
/// tank_off_pct, holds in between.
bool pump1_controller(double level_pct, bool relay_on, const ThresholdConfig& cfg);

/// Wet / Humid / Dry partition of the raw soil count.
SoilClass soil_class(double raw_counts, const ThresholdConfig& cfg);

/// Irrigation pump hysteresis: on when Dry, off when Wet, Humid holds.
bool pump2_controller(const SoilState& soil, bool relay_on, const ThresholdConfig& cfg);

/// Speed command: full duty below taper_start, then a linear taper down to
/// 0.5 at the off threshold. Zero with the relay open.
double pump_duty(double measure_pct, bool relay_on, double taper_start_pct, double off_pct);

/// Pump shaft speed implied by the relay and duty.
double pump_speed_rpm(const PumpState& pump);

/// Delivered flow in L/min at the current speed.
double pump_flow_lpm(const PumpState& pump);

/// Rectangular 0/1 wave with time-average exactly equal to the duty.
int pwm_wave(double duty, double freq_hz, double t_s);

/// One mass-balance step: pump 1 moves water tank1 -> tank2, pump 2 delivers
/// tank2 -> soil, soil moisture gains k_soil per liter and decays at k_evap.
HydraulicsResult hydraulics_step(const TankState& tank1, const TankState& tank2,
                                 const SoilState& soil, const PumpState& pump1,
                                 const PumpState& pump2, double k_soil_per_l,
                                 double k_evap_per_s, double dt_s);

} // namespace solarsim

#endif
