#include "solarsim/tracker.hpp"

#include "solarsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace solarsim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFullScaleCounts = 1023.0;
constexpr double kFullScaleIrradiance = 1000.0;

double deg2rad(double d) { return d * kPi / 180.0; }

struct Vec3 {
    double x, y, z;
};

// Direction for an azimuth (degrees clockwise from north) and a zenith
// angle (degrees down from straight up). y = north, x = east, z = up.
Vec3 direction(double azimuth, double zenith) {
    const double az = deg2rad(azimuth);
    const double zn = deg2rad(zenith);
    return {std::sin(zn) * std::sin(az), std::sin(zn) * std::cos(az), std::cos(zn)};
}

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 sun_direction(const SunModel& sun) {
    return direction(sun.azimuth_deg, 90.0 - sun.elevation_deg);
}

double cosine_response(const Vec3& cell_normal, const Vec3& sun_dir) {
    return std::max(0.0, dot(cell_normal, sun_dir));
}

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform_pm(std::uint64_t& rng_state, double half_width) {
    const double u = static_cast<double>(splitmix64(rng_state)) / 18446744073709551616.0;
    return (2.0 * u - 1.0) * half_width;
}

int deadband_sign(double diff, double tolerance) {
    if (std::abs(diff) <= tolerance) return 0;
    return diff > 0.0 ? 1 : -1;
}

} // namespace

double azimuth_deg(const TrackerPose& pose, const StepperSpec& spec) {
    double a = std::fmod(static_cast<double>(pose.azimuth_steps) * spec.step_deg, 360.0);
    if (a < 0.0) a += 360.0;
    return a;
}

double panel_alignment(const TrackerPose& pose, const SunModel& sun, const StepperSpec& spec) {
    const Vec3 normal = direction(azimuth_deg(pose, spec), pose.tilt_deg);
    return cosine_response(normal, sun_direction(sun));
}

LdrQuad ldr_readings(const SunModel& sun, const TrackerPose& pose, const StepperSpec& spec,
                     const LdrModel& model, std::uint64_t noise_seed) {
    const double az = deg2rad(azimuth_deg(pose, spec));
    const double tilt = deg2rad(pose.tilt_deg);
    const Vec3 sun_dir = sun_direction(sun);
    const double scale = kFullScaleCounts * sun.g_wm2 / kFullScaleIrradiance;

    // Local tangent frame of the panel normal: e_tilt points toward larger
    // tilt, e_az toward larger azimuth. Each quadrant normal sits offset_deg
    // away from the normal along one of the four diagonal tangent directions,
    // so a head-on sun reads identically on all four cells.
    const Vec3 n{std::sin(tilt) * std::sin(az), std::sin(tilt) * std::cos(az), std::cos(tilt)};
    const Vec3 e_tilt{std::cos(tilt) * std::sin(az), std::cos(tilt) * std::cos(az),
                      -std::sin(tilt)};
    const Vec3 e_az{std::cos(az), -std::sin(az), 0.0};

    const double c = std::cos(deg2rad(model.offset_deg));
    const double s = std::sin(deg2rad(model.offset_deg)) / std::sqrt(2.0);
    auto cell_normal = [&](double sgn_az, double sgn_tilt) {
        return Vec3{c * n.x + s * (sgn_az * e_az.x + sgn_tilt * e_tilt.x),
                    c * n.y + s * (sgn_az * e_az.y + sgn_tilt * e_tilt.y),
                    c * n.z + s * (sgn_az * e_az.z + sgn_tilt * e_tilt.z)};
    };

    // "North" pair leans toward larger tilt, "east" pair toward larger azimuth.
    LdrQuad q;
    q.ne = scale * cosine_response(cell_normal(+1.0, +1.0), sun_dir);
    q.nw = scale * cosine_response(cell_normal(-1.0, +1.0), sun_dir);
    q.se = scale * cosine_response(cell_normal(+1.0, -1.0), sun_dir);
    q.sw = scale * cosine_response(cell_normal(-1.0, -1.0), sun_dir);

    if (model.noise_counts > 0.0) {
        std::uint64_t rng = noise_seed;
        q.ne += uniform_pm(rng, model.noise_counts);
        q.nw += uniform_pm(rng, model.noise_counts);
        q.se += uniform_pm(rng, model.noise_counts);
        q.sw += uniform_pm(rng, model.noise_counts);
    }
    q.ne = std::clamp(q.ne, 0.0, kFullScaleCounts);
    q.nw = std::clamp(q.nw, 0.0, kFullScaleCounts);
    q.se = std::clamp(q.se, 0.0, kFullScaleCounts);
    q.sw = std::clamp(q.sw, 0.0, kFullScaleCounts);
    return q;
}

MotionCommand tracker_decide(const LdrQuad& quad, double tolerance) {
    const double avg_top = 0.5 * (quad.ne + quad.nw);
    const double avg_bottom = 0.5 * (quad.se + quad.sw);
    const double avg_left = 0.5 * (quad.nw + quad.sw);
    const double avg_right = 0.5 * (quad.ne + quad.se);

    MotionCommand cmd;
    cmd.tilt = deadband_sign(avg_top - avg_bottom, tolerance);
    cmd.azimuth = deadband_sign(avg_right - avg_left, tolerance);
    return cmd;
}

TrackerPose stepper_step(const TrackerPose& pose, const MotionCommand& cmd,
                         const StepperSpec& spec, double tilt_rate_deg_s, double dt_s) {
    (void)spec; // resolution is implied by the step count representation
    TrackerPose next = pose;
    next.azimuth_steps += cmd.azimuth;
    next.tilt_deg = std::clamp(pose.tilt_deg + cmd.tilt * tilt_rate_deg_s * dt_s, 0.0, 180.0);
    return next;
}

double pulse_width_to_angle(double pw_ms, const PulseWidthMap& map) {
    if (pw_ms < map.pw_min_ms || pw_ms > map.pw_max_ms)
        throw OutOfRange("pulse_width_to_angle: pulse width outside calibrated range");
    const double t = (pw_ms - map.pw_min_ms) / (map.pw_max_ms - map.pw_min_ms);
    return map.angle_min_deg + t * (map.angle_max_deg - map.angle_min_deg);
}

double angle_to_pulse_width(double angle_deg, const PulseWidthMap& map) {
    if (angle_deg < map.angle_min_deg || angle_deg > map.angle_max_deg)
        throw OutOfRange("angle_to_pulse_width: angle outside calibrated range");
    const double t = (angle_deg - map.angle_min_deg) / (map.angle_max_deg - map.angle_min_deg);
    return map.pw_min_ms + t * (map.pw_max_ms - map.pw_min_ms);
}

PidOutput pid_step(const PidGains& gains, const PidState& state, double error, double dt_s) {
    PidOutput out;
    out.state.integral =
        std::clamp(state.integral + error * dt_s, -gains.integral_limit, gains.integral_limit);
    out.state.prev_error = error;
    const double derivative = (error - state.prev_error) / dt_s;
    out.control = gains.kp * error + gains.ki * out.state.integral + gains.kd * derivative;
    return out;
}

TrackerPose elevation_step(const TrackerPose& pose, double target_mm, double rate_mm_s,
                           double dt_s, double stroke_mm) {
    const double max_move = rate_mm_s * dt_s;
    const double delta = std::clamp(target_mm - pose.elevation_mm, -max_move, max_move);
    TrackerPose next = pose;
    next.elevation_mm = std::clamp(pose.elevation_mm + delta, 0.0, stroke_mm);
    return next;
}

} // namespace solarsim
