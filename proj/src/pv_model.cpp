#include "solarsim/pv_model.hpp"

#include "solarsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace solarsim {

namespace {

// Exponent guard: keeps the residual finite during bracket expansion without
// moving any physically reachable root (operating points sit far below this).
double guarded_exp(double x) {
    return std::exp(std::min(x, 600.0));
}

// Double-diode residual in implicit form f(ia) = rhs(ia) - ia.
// ns = np = 1 gives the single-cell equation.
struct DiodeSystem {
    double iph;       // per-module photocurrent (A)
    double io1, io2;  // saturation currents (A)
    double rs, rp;    // resistances (ohm)
    double vt1, vt2;  // thermal voltages (V)
    double ns, np;    // series/parallel module counts
    double v;         // terminal voltage (V)

    double residual(double ia) const {
        const double x = v / ns + ia * rs / np;
        return np * iph
             - np * io1 * (guarded_exp(x / vt1) - 1.0)
             - np * io2 * (guarded_exp(x / vt2) - 1.0)
             - (np / rp) * x
             - ia;
    }

    double residual_derivative(double ia) const {
        const double x = v / ns + ia * rs / np;
        return -io1 * (rs / vt1) * guarded_exp(x / vt1)
             - io2 * (rs / vt2) * guarded_exp(x / vt2)
             - rs / rp
             - 1.0;
    }
};

constexpr double kResidualTol = 1e-9;   // contractual bound
constexpr double kNewtonTarget = 1e-12; // what the iteration actually aims for
constexpr int kMaxNewtonIters = 100;

// Damped Newton with a bisection fallback. The residual is strictly
// decreasing in ia, so a sign-changing bracket pins a unique root.
double solve_current(const DiodeSystem& sys) {
    double ia = sys.np * sys.iph;
    double f = sys.residual(ia);

    for (int iter = 0; iter < kMaxNewtonIters && std::abs(f) > kNewtonTarget; ++iter) {
        const double df = sys.residual_derivative(ia);
        double step = -f / df;
        if (!std::isfinite(step)) break;
        double ia_next = ia + step;
        double f_next = sys.residual(ia_next);
        // Halve the step on overshoot.
        for (int damp = 0; damp < 60 && !(std::abs(f_next) < std::abs(f)); ++damp) {
            step *= 0.5;
            ia_next = ia + step;
            f_next = sys.residual(ia_next);
        }
        if (!(std::abs(f_next) < std::abs(f))) break;
        ia = ia_next;
        f = f_next;
    }
    if (std::abs(f) <= kResidualTol) return ia;

    // Fallback: bisection over [-2*np*iph, 2*np*iph], widened until the
    // residual changes sign across the bracket.
    double half = std::max(2.0 * sys.np * sys.iph, 1.0);
    double lo = -half, hi = half;
    int expand = 0;
    while (sys.residual(lo) < 0.0 || sys.residual(hi) > 0.0) {
        if (++expand > 80) {
            throw NoConvergence("diode current solver: no sign change while bracketing, v=" +
                                std::to_string(sys.v));
        }
        const double w = hi - lo;
        lo -= w;
        hi += w;
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = sys.residual(mid);
        if (std::abs(fm) <= kNewtonTarget || hi - lo < 1e-15) return mid;
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double root = 0.5 * (lo + hi);
    if (std::abs(sys.residual(root)) <= kResidualTol) return root;
    throw NoConvergence("diode current solver: residual tolerance not met, v=" +
                        std::to_string(sys.v));
}

DiodeSystem make_system(const PvCellParams& cell, const OperatingEnv& env, double ns, double np,
                        double v) {
    const auto [vt1, vt2] = thermal_voltages(cell, env);
    const auto [io1, io2] = saturation_currents(cell, env);
    return DiodeSystem{photocurrent(cell, env), io1, io2, cell.rs,
                       cell.rp, vt1, vt2, ns, np, v};
}

} // namespace

std::pair<double, double> thermal_voltages(const PvCellParams& cell, const OperatingEnv& env) {
    const double kt_over_q =
        constants::kBoltzmann * env.cell_temp_k / constants::kElectronCharge;
    return {cell.a1 * kt_over_q, cell.a2 * kt_over_q};
}

double photocurrent(const PvCellParams& cell, const OperatingEnv& env) {
    const double iph = cell.iph_stc * (env.irradiance_wm2 / constants::kStcIrradiance) *
                       (1.0 + cell.alpha_i * (env.cell_temp_k - constants::kStcTempK));
    return std::max(iph, 0.0);
}

std::pair<double, double> saturation_currents(const PvCellParams& cell, const OperatingEnv& env) {
    const double t = env.cell_temp_k;
    const double tref = constants::kStcTempK;
    if (cell.eg_ev <= 0.0 || t == tref) return {cell.io1, cell.io2};
    const double ratio3 = (t / tref) * (t / tref) * (t / tref);
    const double eg_j = cell.eg_ev * constants::kElectronCharge;
    const double arg = (eg_j / constants::kBoltzmann) * (1.0 / tref - 1.0 / t);
    return {cell.io1 * ratio3 * std::exp(arg / cell.a1),
            cell.io2 * ratio3 * std::exp(arg / cell.a2)};
}

double cell_current(const PvCellParams& cell, const OperatingEnv& env, double vc) {
    if (vc < 0.0) throw DomainError("cell_current: negative terminal voltage");
    return solve_current(make_system(cell, env, 1.0, 1.0, vc));
}

double array_current(const PvArraySpec& spec, const OperatingEnv& env, double va) {
    if (va < 0.0) throw DomainError("array_current: negative terminal voltage");
    return solve_current(
        make_system(spec.cell, env, static_cast<double>(spec.ns), static_cast<double>(spec.np), va));
}

double open_circuit_voltage(const PvArraySpec& spec, const OperatingEnv& env) {
    const double isc = array_current(spec, env, 0.0);
    if (isc <= 0.0) return 0.0; // dark array

    double hi = spec.ns * 1.0;
    int expand = 0;
    while (array_current(spec, env, hi) > 0.0) {
        if (++expand > 20)
            throw NoConvergence("open_circuit_voltage: no sign change while bracketing");
        hi *= 2.0;
    }
    double lo = 0.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (array_current(spec, env, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

IvCurve iv_sweep(const PvArraySpec& spec, const OperatingEnv& env, int n_points) {
    if (n_points < 2) throw DomainError("iv_sweep: need at least 2 points");
    const double voc = open_circuit_voltage(spec, env);
    IvCurve curve;
    if (voc <= 0.0) {
        const double i0 = array_current(spec, env, 0.0);
        curve.push_back({0.0, i0, 0.0});
        return curve;
    }
    curve.reserve(static_cast<size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        const double v = voc * static_cast<double>(k) / static_cast<double>(n_points - 1);
        const double i = array_current(spec, env, v);
        curve.push_back({v, i, v * i});
    }
    return curve;
}

IvPoint find_mpp(const IvCurve& curve) {
    if (curve.empty()) throw EmptyCurve("find_mpp: empty curve");
    IvPoint best = curve.front();
    for (const auto& pt : curve) {
        if (pt.p > best.p || (pt.p == best.p && pt.v < best.v)) best = pt;
    }
    return best;
}

double efficiency(const PvArraySpec& spec, const OperatingEnv& env, double va, double ia) {
    if (env.irradiance_wm2 <= 0.0)
        throw DomainError("efficiency: undefined at zero irradiance");
    if (spec.area_m2 <= 0.0) throw DomainError("efficiency: array area must be positive");
    return (va * ia) / (spec.area_m2 * env.irradiance_wm2);
}

} // namespace solarsim
