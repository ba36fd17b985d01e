#ifndef SOLARSIM_TRACKER_HPP
#define SOLARSIM_TRACKER_HPP

#include <cstdint>

namespace solarsim {

/// Four quadrant photocell readings on the 0..1023 count scale.
struct LdrQuad {
    double ne = 0.0;
    double nw = 0.0;
    double se = 0.0;
    double sw = 0.0;
};

/// Panel orientation. Azimuth is carried as a signed stepper step count
/// (1.8 deg/step, angle taken modulo 360); tilt is the zenith angle of the
/// panel normal, 0 deg = flat.
struct TrackerPose {
    std::int64_t azimuth_steps = 0;
    double tilt_deg = 0.0;      ///< 0..180
    double elevation_mm = 0.0;  ///< linear-actuator extension
};

struct StepperSpec {
    int steps_per_rev = 200;
    double step_deg = 1.8;
};

/// Linear pulse-width to angle calibration.
struct PulseWidthMap {
    double pw_min_ms = 1.25;
    double pw_max_ms = 1.75;
    double angle_min_deg = 0.0;
    double angle_max_deg = 180.0;
};

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double integral_limit = 1e6; ///< anti-windup clamp on the accumulator
};

struct PidState {
    double integral = 0.0;
    double prev_error = 0.0;
};

struct PidOutput {
    double control = 0.0;
    PidState state;
};

/// Sun direction and clear-sky irradiance driving the sensor model.
struct SunModel {
    double azimuth_deg = 180.0;
    double elevation_deg = 45.0; ///< 0..90
    double g_wm2 = 1000.0;
};

/// Sensor model parameters: quadrant normals sit offset_deg away from the
/// panel normal in the azimuth/tilt directions; noise_counts adds seeded
/// uniform noise of that half-width to each reading.
struct LdrModel {
    double offset_deg = 15.0;
    double noise_counts = 0.0;
};

/// Discrete motion request, each axis in {-1, 0, +1}.
struct MotionCommand {
    int azimuth = 0;
    int tilt = 0;
};

/// Panel azimuth angle in [0, 360) implied by the step count.
double azimuth_deg(const TrackerPose& pose, const StepperSpec& spec);

/// Cosine of the angle between the panel normal and the sun direction,
/// clamped at 0 (sun behind the panel).
double panel_alignment(const TrackerPose& pose, const SunModel& sun, const StepperSpec& spec);

/// Cosine-response quadrant readings, 1023 counts at 1000 W/m^2 head-on.
/// Deterministic for a fixed noise_seed.
LdrQuad ldr_readings(const SunModel& sun, const TrackerPose& pose, const StepperSpec& spec,
                     const LdrModel& model, std::uint64_t noise_seed);

/// Quadrant-average comparison with a dead-band of `tolerance` counts.
MotionCommand tracker_decide(const LdrQuad& quad, double tolerance);

/// Applies one control cycle of motion: one stepper step on the azimuth axis,
/// rate-limited tilt, clamped to [0, 180].
TrackerPose stepper_step(const TrackerPose& pose, const MotionCommand& cmd,
                         const StepperSpec& spec, double tilt_rate_deg_s, double dt_s);

/// Linear map from pulse width to angle. Throws OutOfRange outside the map.
double pulse_width_to_angle(double pw_ms, const PulseWidthMap& map);

/// Exact inverse of pulse_width_to_angle. Throws OutOfRange outside the map.
double angle_to_pulse_width(double angle_deg, const PulseWidthMap& map);

/// Textbook PID with rectangle-rule integral and clamped accumulator.
PidOutput pid_step(const PidGains& gains, const PidState& state, double error, double dt_s);

/// Moves the elevation axis toward target at a bounded rate without
/// overshoot, clamped to [0, stroke_mm].
TrackerPose elevation_step(const TrackerPose& pose, double target_mm, double rate_mm_s,
                           double dt_s, double stroke_mm = 100.0);

} // namespace solarsim

#endif
