#ifndef SOLARSIM_PV_MODEL_HPP
#define SOLARSIM_PV_MODEL_HPP

#include <utility>
#include <vector>

namespace solarsim {

namespace constants {
// Fixed physical constants, never configurable.
inline constexpr double kElectronCharge = 1.602e-19; // C
inline constexpr double kBoltzmann = 1.381e-23;      // J/K
inline constexpr double kStcTempK = 298.15;          // 25 degC
inline constexpr double kStcIrradiance = 1000.0;     // W/m^2
} // namespace constants

/// Electrical parameters of one double-diode cell module.
struct PvCellParams {
    double iph_stc = 1.25;   ///< photocurrent at STC (A)
    double io1 = 1e-10;      ///< first diode saturation current at STC (A)
    double io2 = 1e-6;       ///< second diode saturation current at STC (A)
    double rs = 0.1;         ///< series resistance (ohm)
    double rp = 500.0;       ///< shunt resistance (ohm)
    double a1 = 1.0;         ///< first diode ideality factor
    double a2 = 2.0;         ///< second diode ideality factor
    double alpha_i = 0.0006; ///< photocurrent temperature coefficient (1/K)
    double eg_ev = 1.12;     ///< band gap for the saturation-current law (eV); 0 disables
};

/// Series/parallel composition of cell modules into the array.
struct PvArraySpec {
    PvCellParams cell;
    int ns = 36;                 ///< modules in series
    int np = 1;                  ///< strings in parallel
    double area_m2 = 0.15;       ///< total array area (m^2)
    double rated_power_w = 20.0; ///< nameplate power (W)
};

/// Operating environment of the array plane.
struct OperatingEnv {
    double irradiance_wm2 = constants::kStcIrradiance; ///< plane-of-array irradiance (W/m^2)
    double cell_temp_k = constants::kStcTempK;         ///< cell temperature (K)
};

struct IvPoint {
    double v = 0.0; ///< terminal voltage (V)
    double i = 0.0; ///< terminal current (A)
    double p = 0.0; ///< power v*i (W)
};

/// Points ordered by strictly ascending voltage.
using IvCurve = std::vector<IvPoint>;

/// Diode thermal voltages (vt1, vt2) = a*kB*Tc/q for the two diodes.
std::pair<double, double> thermal_voltages(const PvCellParams& cell, const OperatingEnv& env);

/// Light-generated current: iph_stc * (G/1000) * (1 + alpha_i*(Tc - 298.15)), clamped at 0.
double photocurrent(const PvCellParams& cell, const OperatingEnv& env);

/// Saturation currents corrected to the cell temperature:
/// io_k(T) = io_k * (T/298.15)^3 * exp(q*eg/(a_k*kB) * (1/298.15 - 1/T)).
/// This is what makes Voc (and so the MPP) fall on a hot panel.
std::pair<double, double> saturation_currents(const PvCellParams& cell, const OperatingEnv& env);

/// Terminal current of a single cell module at voltage vc.
/// Solves the implicit double-diode equation to |residual| <= 1e-9 A.
/// Throws NoConvergence if the tolerance cannot be met.
double cell_current(const PvCellParams& cell, const OperatingEnv& env, double vc);

/// Terminal current of the ns x np array at voltage va; same solver contract
/// as cell_current. Reduces exactly to cell_current when ns == np == 1.
double array_current(const PvArraySpec& spec, const OperatingEnv& env, double va);

/// Open-circuit voltage: root of array_current(v) = 0, bracketed from
/// [0, ns * 1.0 V] with doubling expansion. Returns 0 in the dark.
double open_circuit_voltage(const PvArraySpec& spec, const OperatingEnv& env);

/// n_points evenly spaced voltages from 0 to Voc, each solved with
/// array_current. A dark array (Voc = 0) collapses to the single origin point.
IvCurve iv_sweep(const PvArraySpec& spec, const OperatingEnv& env, int n_points);

/// Point of maximal power; ties broken toward the lowest voltage.
/// Throws EmptyCurve on an empty curve.
IvPoint find_mpp(const IvCurve& curve);

/// Array conversion efficiency (va*ia)/(area*G).
/// Throws DomainError when irradiance is zero (undefined in the dark).
double efficiency(const PvArraySpec& spec, const OperatingEnv& env, double va, double ia);

} // namespace solarsim

#endif
