#ifndef SOLARSIM_MPPT_HPP
#define SOLARSIM_MPPT_HPP

#include <cstdint>

namespace solarsim {

/// Direction rule for the perturb-and-observe hill climb.
/// Standard: raise the reference when dP and dV share a sign.
/// Inverted: perturbs against the voltage change whenever power increased;
/// kept selectable so the two rules can be compared side by side (see the
/// mppt-compare subcommand).
enum class PoDirectionRule { Standard, Inverted };

enum class MpptAlgorithm { PerturbObserve, IncrementalConductance };

/// Voltage conversion law of the DC-DC stage.
/// Boost: v_out/v_in = 1/(1-d).  IdealBuck: v_out/v_in = d.
enum class ConverterKind { Boost, IdealBuck };

struct MpptConfig {
    double step_v = 0.2;      ///< perturbation step (V)
    double v_min = 1.0;       ///< reference clamp lower bound (V)
    double v_max = 24.0;      ///< reference clamp upper bound (V)
    double ic_epsilon = 1e-3; ///< conductance dead-band (A/V)
    PoDirectionRule rule = PoDirectionRule::Standard;
};

/// Controller memory carried between perturbation cycles.
struct MpptState {
    double v_ref = 0.0;
    double prev_v = 0.0;
    double prev_i = 0.0;
    double prev_p = 0.0;
    std::int64_t cycle = 0;
};

/// One perturb-and-observe cycle on measurement (v, i). The first cycle only
/// records the sample; afterwards every cycle moves v_ref by exactly one step.
MpptState po_step(const MpptState& state, double v, double i, const MpptConfig& cfg);

/// One incremental-conductance cycle: compares dI/dV against -I/V and holds
/// v_ref inside the ic_epsilon dead-band. Throws DomainError when v <= 0.
MpptState ic_step(const MpptState& state, double v, double i, const MpptConfig& cfg);

/// v_out/v_in for duty d under the given topology.
/// Throws DomainError for d outside [0,1], or d = 1 under Boost.
double conversion_ratio(double d, ConverterKind kind);

/// Duty that makes conversion_ratio(d) * v_in = v_out_target, clamped to
/// [0, 0.99]. Throws Unachievable when the topology cannot reach the target.
double duty_for_target(double v_in, double v_out_target, ConverterKind kind);

} // namespace solarsim

#endif
