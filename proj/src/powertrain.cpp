#include "solarsim/powertrain.hpp"

#include <algorithm>

namespace solarsim {

BatteryStepResult battery_step(const BatteryState& state, double net_current_a, double dt_s) {
    const double delta_ah = net_current_a * dt_s / 3600.0;
    const double delta_pct = 100.0 * delta_ah / state.capacity_ah;
    const double unclamped = state.soc_pct + delta_pct;

    BatteryStepResult out;
    out.state = state;
    out.state.soc_pct = std::clamp(unclamped, 0.0, 100.0);
    if (unclamped > 100.0)
        out.curtailed_ah = (unclamped - 100.0) / 100.0 * state.capacity_ah;
    return out;
}

double open_circuit_voltage(const BatteryState& state) {
    return state.v_nominal * (0.95 + 0.1 * state.soc_pct / 100.0);
}

double terminal_voltage(const BatteryState& state, double load_current_a) {
    return open_circuit_voltage(state) - load_current_a * state.r_internal;
}

bool charge_relay(const BatteryState& state, const ChargeRelayConfig& cfg, bool loads_on) {
    if (state.soc_pct < cfg.soc_cutoff_pct) return false;
    if (state.soc_pct >= cfg.soc_reconnect_pct) return true;
    return loads_on;
}

} // namespace solarsim
