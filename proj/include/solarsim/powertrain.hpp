#ifndef SOLARSIM_POWERTRAIN_HPP
#define SOLARSIM_POWERTRAIN_HPP

namespace solarsim {

/// Lead-acid battery bookkeeping state.
struct BatteryState {
    double soc_pct = 50.0;     ///< state of charge, 0..100 (%)
    double capacity_ah = 7.0;  ///< rated charge capacity (Ah)
    double v_nominal = 12.0;   ///< nominal terminal voltage (V)
    double r_internal = 0.05;  ///< internal resistance (ohm)
};

/// Low-voltage-disconnect thresholds of the charge controller.
struct ChargeRelayConfig {
    double soc_reconnect_pct = 20.0; ///< loads reconnect at/above this SOC
    double soc_cutoff_pct = 10.0;    ///< loads disconnect below this SOC
};

struct BatteryStepResult {
    BatteryState state;
    double curtailed_ah = 0.0; ///< charge discarded by the 100% clamp
};

/// Coulomb-counting update: positive net_current charges. SOC clamps to
/// [0, 100]; charge rejected by the full-battery clamp is reported so the
/// trace can log it.
BatteryStepResult battery_step(const BatteryState& state, double net_current_a, double dt_s);

/// Open-circuit voltage of the linear SOC law: v_nominal*(0.95 + 0.1*soc/100).
double open_circuit_voltage(const BatteryState& state);

/// Terminal voltage under load: ocv(soc) - load_current * r_internal.
/// Negative load_current (net charging) raises the terminal above OCV.
double terminal_voltage(const BatteryState& state, double load_current_a);

/// Hysteretic load disconnect: off below soc_cutoff, back on only at/above
/// soc_reconnect, otherwise holds the previous state.
bool charge_relay(const BatteryState& state, const ChargeRelayConfig& cfg, bool loads_on);

} // namespace solarsim

#endif
