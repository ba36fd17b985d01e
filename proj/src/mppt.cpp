#include "solarsim/mppt.hpp"

#include "solarsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace solarsim {

namespace {

double clamp_ref(double v_ref, const MpptConfig& cfg) {
    return std::clamp(v_ref, cfg.v_min, cfg.v_max);
}

MpptState record_first_sample(const MpptState& state, double v, double i,
                              const MpptConfig& cfg) {
    MpptState next = state;
    next.v_ref = clamp_ref(state.v_ref, cfg);
    next.prev_v = v;
    next.prev_i = i;
    next.prev_p = v * i;
    next.cycle = state.cycle + 1;
    return next;
}

} // namespace

MpptState po_step(const MpptState& state, double v, double i, const MpptConfig& cfg) {
    if (state.cycle == 0) return record_first_sample(state, v, i, cfg);

    const double p = v * i;
    const double dp = p - state.prev_p;
    const double dv = v - state.prev_v;

    double direction;
    if (cfg.rule == PoDirectionRule::Standard) {
        // Raise the reference when power and voltage moved together.
        direction = ((dp > 0.0 && dv > 0.0) || (dp < 0.0 && dv < 0.0)) ? +1.0 : -1.0;
    } else {
        // Inverted rule: the dP>0 half perturbs against the observed voltage
        // change; the dP<=0 half matches the standard rule.
        if (dp > 0.0)
            direction = (dv > 0.0) ? -1.0 : +1.0;
        else
            direction = (dv < 0.0) ? +1.0 : -1.0;
    }

    MpptState next = state;
    next.v_ref = clamp_ref(state.v_ref + direction * cfg.step_v, cfg);
    next.prev_v = v;
    next.prev_i = i;
    next.prev_p = p;
    next.cycle = state.cycle + 1;
    return next;
}

MpptState ic_step(const MpptState& state, double v, double i, const MpptConfig& cfg) {
    if (v <= 0.0) throw DomainError("ic_step: terminal voltage must be positive");
    if (state.cycle == 0) return record_first_sample(state, v, i, cfg);

    const double di = i - state.prev_i;
    const double dv = v - state.prev_v;

    // With an unchanged voltage the conductance sum is undefined; the current
    // change alone carries the sign information.
    const double g = (std::abs(dv) < 1e-12) ? di : (di / dv + i / v);

    MpptState next = state;
    if (g > cfg.ic_epsilon)
        next.v_ref = clamp_ref(state.v_ref + cfg.step_v, cfg);
    else if (g < -cfg.ic_epsilon)
        next.v_ref = clamp_ref(state.v_ref - cfg.step_v, cfg);
    // |g| <= epsilon: hold at the MPP.
    next.prev_v = v;
    next.prev_i = i;
    next.prev_p = v * i;
    next.cycle = state.cycle + 1;
    return next;
}

double conversion_ratio(double d, ConverterKind kind) {
    if (d < 0.0 || d > 1.0) throw DomainError("conversion_ratio: duty outside [0, 1]");
    switch (kind) {
    case ConverterKind::Boost:
        if (d == 1.0) throw DomainError("conversion_ratio: ratio unbounded at d = 1");
        return 1.0 / (1.0 - d);
    case ConverterKind::IdealBuck:
        return d;
    }
    throw DomainError("conversion_ratio: unknown topology");
}

double duty_for_target(double v_in, double v_out_target, ConverterKind kind) {
    if (v_in <= 0.0 || v_out_target <= 0.0)
        throw DomainError("duty_for_target: voltages must be positive");
    const double ratio = v_out_target / v_in;
    double d;
    switch (kind) {
    case ConverterKind::Boost:
        if (ratio < 1.0)
            throw Unachievable("duty_for_target: boost stage cannot step down");
        d = 1.0 - 1.0 / ratio;
        break;
    case ConverterKind::IdealBuck:
        if (ratio > 1.0)
            throw Unachievable("duty_for_target: buck stage cannot step up");
        d = ratio;
        break;
    default:
        throw DomainError("duty_for_target: unknown topology");
    }
    return std::clamp(d, 0.0, 0.99);
}

} // namespace solarsim
