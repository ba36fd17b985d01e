#include <doctest.h>

#include "solarsim/errors.hpp"
#include "solarsim/tracker.hpp"

#include <cmath>
#include <initializer_list>
#include <random>

using namespace solarsim;

namespace {
const StepperSpec kStepper;
const LdrModel kNoiseless;
} // namespace

TEST_CASE("ldr readings: symmetry, direction, dark") {
    SunModel sun{180.0, 45.0, 1000.0};
    TrackerPose aligned;
    aligned.azimuth_steps = 100; // 180 deg
    aligned.tilt_deg = 45.0;

    LdrQuad q = ldr_readings(sun, aligned, kStepper, kNoiseless, 0);
    CHECK(q.ne == doctest::Approx(q.nw).epsilon(1e-9));
    CHECK(q.ne == doctest::Approx(q.se).epsilon(1e-9));
    CHECK(q.ne == doctest::Approx(q.sw).epsilon(1e-9));
    CHECK(q.ne > 900.0); // head-on at 1000 W/m^2 reads near full scale

    // sun moved toward the +azimuth/+tilt corner: ne strictly largest
    SunModel toward_ne{190.0, 37.0, 1000.0};
    q = ldr_readings(toward_ne, aligned, kStepper, kNoiseless, 0);
    CHECK(q.ne > q.nw);
    CHECK(q.ne > q.se);
    CHECK(q.ne > q.sw);

    SunModel dark{180.0, 45.0, 0.0};
    q = ldr_readings(dark, aligned, kStepper, kNoiseless, 0);
    CHECK(q.ne == 0.0);
    CHECK(q.nw == 0.0);
    CHECK(q.se == 0.0);
    CHECK(q.sw == 0.0);
}

TEST_CASE("ldr noise is seeded, bounded and deterministic") {
    SunModel sun{180.0, 45.0, 1000.0};
    TrackerPose pose;
    pose.azimuth_steps = 100;
    pose.tilt_deg = 45.0;
    LdrModel noisy;
    noisy.noise_counts = 5.0;

    const LdrQuad clean = ldr_readings(sun, pose, kStepper, kNoiseless, 7);
    const LdrQuad a = ldr_readings(sun, pose, kStepper, noisy, 7);
    const LdrQuad b = ldr_readings(sun, pose, kStepper, noisy, 7);
    const LdrQuad c = ldr_readings(sun, pose, kStepper, noisy, 8);

    CHECK(a.ne == b.ne);
    CHECK(a.nw == b.nw);
    CHECK(a.se == b.se);
    CHECK(a.sw == b.sw);
    CHECK(a.ne != c.ne);

    CHECK(std::abs(a.ne - clean.ne) <= 5.0);
    CHECK(std::abs(a.sw - clean.sw) <= 5.0);
    for (double r : {a.ne, a.nw, a.se, a.sw}) {
        CHECK(r >= 0.0);
        CHECK(r <= 1023.0);
    }
}

TEST_CASE("tracker_decide quadrant averages with dead-band") {
    CHECK(tracker_decide({500, 500, 500, 500}, 20).azimuth == 0);
    CHECK(tracker_decide({500, 500, 500, 500}, 20).tilt == 0);

    // top pair brighter by 200 > 50: tilt only
    MotionCommand cmd = tracker_decide({900, 900, 700, 700}, 50);
    CHECK(cmd.tilt == 1);
    CHECK(cmd.azimuth == 0);

    // right-left difference of 5 under a tolerance of 50: no motion
    cmd = tracker_decide({800, 795, 800, 795}, 50);
    CHECK(cmd.tilt == 0);
    CHECK(cmd.azimuth == 0);

    // bottom and left brighter: both negative
    cmd = tracker_decide({100, 300, 500, 700}, 20);
    CHECK(cmd.tilt == -1);
    CHECK(cmd.azimuth == -1);
}

TEST_CASE("stepper_step kinematics") {
    TrackerPose pose;
    pose = stepper_step(pose, {1, 0}, kStepper, 18.0, 0.1);
    CHECK(azimuth_deg(pose, kStepper) == doctest::Approx(1.8));

    for (int k = 0; k < 199; ++k) pose = stepper_step(pose, {1, 0}, kStepper, 18.0, 0.1);
    CHECK(azimuth_deg(pose, kStepper) == doctest::Approx(0.0)); // full revolution

    pose.tilt_deg = 180.0;
    pose = stepper_step(pose, {0, 1}, kStepper, 18.0, 0.1);
    CHECK(pose.tilt_deg == 180.0);

    pose.tilt_deg = 0.0;
    pose = stepper_step(pose, {0, -1}, kStepper, 18.0, 0.1);
    CHECK(pose.tilt_deg == 0.0);

    pose.tilt_deg = 90.0;
    pose = stepper_step(pose, {0, 1}, kStepper, 18.0, 0.1);
    CHECK(pose.tilt_deg == doctest::Approx(91.8));

    // negative steps wrap into [0, 360)
    TrackerPose neg;
    neg.azimuth_steps = -1;
    CHECK(azimuth_deg(neg, kStepper) == doctest::Approx(358.2));
}

TEST_CASE("no chatter at balance") {
    TrackerPose pose;
    pose.azimuth_steps = 50;
    pose.tilt_deg = 30.0;
    const TrackerPose start = pose;
    for (int k = 0; k < 100; ++k) {
        const MotionCommand cmd = tracker_decide({640, 640, 640, 640}, 20);
        CHECK(cmd.azimuth == 0);
        CHECK(cmd.tilt == 0);
        pose = stepper_step(pose, cmd, kStepper, 18.0, 0.1);
    }
    CHECK(pose.azimuth_steps == start.azimuth_steps);
    CHECK(pose.tilt_deg == start.tilt_deg);
}

TEST_CASE("pulse width map endpoints and round trip") {
    PulseWidthMap map;
    CHECK(pulse_width_to_angle(1.25, map) == doctest::Approx(0.0));
    CHECK(pulse_width_to_angle(1.75, map) == doctest::Approx(180.0));
    CHECK(pulse_width_to_angle(1.50, map) == doctest::Approx(90.0));
    CHECK(angle_to_pulse_width(0.0, map) == doctest::Approx(1.25));
    CHECK(angle_to_pulse_width(180.0, map) == doctest::Approx(1.75));

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ua(0.0, 180.0);
    for (int k = 0; k < 200; ++k) {
        const double angle = ua(rng);
        const double back = pulse_width_to_angle(angle_to_pulse_width(angle, map), map);
        CHECK(std::abs(back - angle) <= 1e-12);
    }

    CHECK_THROWS_AS((void)pulse_width_to_angle(1.24, map), OutOfRange);
    CHECK_THROWS_AS((void)pulse_width_to_angle(1.76, map), OutOfRange);
    CHECK_THROWS_AS((void)angle_to_pulse_width(-1.0, map), OutOfRange);
    CHECK_THROWS_AS((void)angle_to_pulse_width(181.0, map), OutOfRange);
}

TEST_CASE("pid_step") {
    PidGains gains;
    PidState state;

    // zero error leaves everything at rest
    gains.kp = 2.0;
    PidOutput out = pid_step(gains, state, 0.0, 0.1);
    CHECK(out.control == 0.0);
    CHECK(out.state.integral == 0.0);

    // pure proportional
    out = pid_step(gains, state, 3.0, 0.1);
    CHECK(out.control == doctest::Approx(6.0));

    // rectangle-rule integral: two unit steps of e=1 at ki=1
    gains = PidGains{};
    gains.ki = 1.0;
    PidState s2;
    out = pid_step(gains, s2, 1.0, 1.0);
    CHECK(out.control == doctest::Approx(1.0));
    out = pid_step(gains, out.state, 1.0, 1.0);
    CHECK(out.control == doctest::Approx(2.0));

    // derivative on the error difference
    gains = PidGains{};
    gains.kd = 0.5;
    PidState s3;
    out = pid_step(gains, s3, 2.0, 0.5);
    CHECK(out.control == doctest::Approx(0.5 * (2.0 - 0.0) / 0.5));

    // integral clamp
    gains = PidGains{};
    gains.ki = 1.0;
    gains.integral_limit = 2.0;
    PidState s4;
    PidOutput o4{0.0, s4};
    for (int k = 0; k < 100; ++k) o4 = pid_step(gains, o4.state, 1.0, 1.0);
    CHECK(o4.state.integral == 2.0);
    CHECK(o4.control == doctest::Approx(2.0));
}

TEST_CASE("elevation axis moves at a bounded rate without overshoot") {
    TrackerPose pose;
    pose.elevation_mm = 50.0;

    CHECK(elevation_step(pose, 50.0, 2.0, 1.0).elevation_mm == 50.0);
    CHECK(elevation_step(pose, 60.0, 2.0, 1.0).elevation_mm == doctest::Approx(52.0));
    CHECK(elevation_step(pose, 40.0, 2.0, 1.0).elevation_mm == doctest::Approx(48.0));
    CHECK(elevation_step(pose, 51.0, 2.0, 1.0).elevation_mm == doctest::Approx(51.0));

    pose.elevation_mm = 99.5;
    CHECK(elevation_step(pose, 200.0, 2.0, 1.0, 100.0).elevation_mm == 100.0);
    pose.elevation_mm = 0.5;
    CHECK(elevation_step(pose, -10.0, 2.0, 1.0, 100.0).elevation_mm == 0.0);
}

TEST_CASE("closed loop acquires a static sun and holds") {
    SunModel sun{135.0, 40.0, 1000.0};
    TrackerPose pose;
    pose.tilt_deg = 45.0;
    pose.azimuth_steps = static_cast<std::int64_t>(std::llround((135.0 - 75.0) / 1.8));

    int converged_at = -1;
    for (int c = 0; c < 400; ++c) {
        const MotionCommand cmd = tracker_decide(ldr_readings(sun, pose, kStepper, kNoiseless, 0), 20.0);
        if (cmd.azimuth == 0 && cmd.tilt == 0) {
            converged_at = c;
            break;
        }
        pose = stepper_step(pose, cmd, kStepper, 18.0, 0.1);
    }
    REQUIRE(converged_at >= 0);

    double az_err = std::abs(azimuth_deg(pose, kStepper) - sun.azimuth_deg);
    if (az_err > 180.0) az_err = 360.0 - az_err;
    CHECK(az_err <= 10.0);
    CHECK(std::abs(pose.tilt_deg - (90.0 - sun.elevation_deg)) <= 5.0);

    const TrackerPose held = pose;
    for (int c = 0; c < 100; ++c) {
        const MotionCommand cmd = tracker_decide(ldr_readings(sun, pose, kStepper, kNoiseless, 0), 20.0);
        CHECK(cmd.azimuth == 0);
        CHECK(cmd.tilt == 0);
        pose = stepper_step(pose, cmd, kStepper, 18.0, 0.1);
    }
    CHECK(pose.azimuth_steps == held.azimuth_steps);
    CHECK(pose.tilt_deg == held.tilt_deg);
}
