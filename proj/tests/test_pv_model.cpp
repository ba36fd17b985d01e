#include <doctest.h>

#include "solarsim/errors.hpp"
#include "solarsim/pv_model.hpp"

#include <cmath>
#include <initializer_list>

using namespace solarsim;

namespace {

// Independent bisection oracle for the implicit array-current equation.
// The residual is written out from scratch on purpose: it must not share
// code with the solver it checks.
double oracle_residual(const PvArraySpec& s, double g, double t, double v, double ia) {
    const double q = 1.602e-19, kb = 1.381e-23, tref = 298.15;
    const double iph =
        std::max(0.0, s.cell.iph_stc * (g / 1000.0) * (1.0 + s.cell.alpha_i * (t - tref)));
    const double vt1 = s.cell.a1 * kb * t / q;
    const double vt2 = s.cell.a2 * kb * t / q;
    double io1 = s.cell.io1, io2 = s.cell.io2;
    if (s.cell.eg_ev > 0.0 && t != tref) {
        const double r3 = (t / tref) * (t / tref) * (t / tref);
        const double arg = (s.cell.eg_ev * q / kb) * (1.0 / tref - 1.0 / t);
        io1 *= r3 * std::exp(arg / s.cell.a1);
        io2 *= r3 * std::exp(arg / s.cell.a2);
    }
    const double np = s.np, ns = s.ns;
    const double x = v / ns + ia * s.cell.rs / np;
    auto e = [](double a) { return std::exp(std::min(a, 700.0)); };
    return np * iph - np * io1 * (e(x / vt1) - 1.0) - np * io2 * (e(x / vt2) - 1.0) -
           (np / s.cell.rp) * x - ia;
}

double oracle_array_current(const PvArraySpec& s, double g, double t, double v) {
    double lo = -(2.0 * s.np * s.cell.iph_stc + 1000.0);
    double hi = 2.0 * s.np * s.cell.iph_stc + 1000.0;
    REQUIRE(oracle_residual(s, g, t, v, lo) > 0.0);
    REQUIRE(oracle_residual(s, g, t, v, hi) < 0.0);
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (oracle_residual(s, g, t, v, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

PvArraySpec single_cell_spec() {
    PvArraySpec s;
    s.ns = 1;
    s.np = 1;
    return s;
}

} // namespace

TEST_CASE("thermal voltages follow a*kB*T/q") {
    PvCellParams cell;
    OperatingEnv stc{1000.0, 298.15};

    cell.a1 = 1.0;
    auto [vt1, vt2] = thermal_voltages(cell, stc);
    CHECK(vt1 == doctest::Approx(0.0257019444444).epsilon(1e-10));
    CHECK(vt2 == doctest::Approx(2.0 * vt1).epsilon(1e-12));

    cell.a1 = 2.0;
    CHECK(thermal_voltages(cell, stc).first == doctest::Approx(2.0 * vt1).epsilon(1e-12));

    cell.a1 = 1.0;
    OperatingEnv hot{1000.0, 596.30};
    CHECK(thermal_voltages(cell, hot).first == doctest::Approx(2.0 * vt1).epsilon(1e-12));

    CHECK(vt1 > 0.0);
    CHECK(vt2 > 0.0);
}

TEST_CASE("photocurrent law") {
    PvCellParams cell;
    cell.iph_stc = 1.2;

    CHECK(photocurrent(cell, {1000.0, 298.15}) == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(photocurrent(cell, {0.0, 298.15}) == 0.0);

    cell.alpha_i = 0.0;
    CHECK(photocurrent(cell, {500.0, 298.15}) == doctest::Approx(0.6).epsilon(1e-12));

    // very cold with a large coefficient: clamped at zero
    cell.alpha_i = 0.1;
    CHECK(photocurrent(cell, {1000.0, 100.0}) == 0.0);
}

TEST_CASE("saturation currents scale with temperature") {
    PvCellParams cell;
    OperatingEnv stc{1000.0, 298.15};
    auto [i1, i2] = saturation_currents(cell, stc);
    CHECK(i1 == cell.io1);
    CHECK(i2 == cell.io2);

    auto [h1, h2] = saturation_currents(cell, {1000.0, 323.15});
    CHECK(h1 > cell.io1);
    CHECK(h2 > cell.io2);
    CHECK(h1 / cell.io1 > h2 / cell.io2); // a1 < a2 makes diode 1 steeper

    cell.eg_ev = 0.0;
    auto [f1, f2] = saturation_currents(cell, {1000.0, 323.15});
    CHECK(f1 == cell.io1);
    CHECK(f2 == cell.io2);
}

TEST_CASE("cell current: dark short circuit is zero") {
    PvCellParams cell;
    CHECK(cell_current(cell, {0.0, 298.15}, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("cell current: ideal cell reduces to the photocurrent at short circuit") {
    PvCellParams cell;
    cell.rs = 0.0;
    cell.rp = 1e12;
    OperatingEnv stc{1000.0, 298.15};
    CHECK(std::abs(cell_current(cell, stc, 0.0) - photocurrent(cell, stc)) <= 1e-9);
}

TEST_CASE("cell current matches the bisection oracle at 0.5 V") {
    PvCellParams cell;
    OperatingEnv stc{1000.0, 298.15};
    const double ic = cell_current(cell, stc, 0.5);
    CHECK(ic == doctest::Approx(0.719371859852).epsilon(1e-9)); // frozen from the oracle
    CHECK(std::abs(ic - oracle_array_current(single_cell_spec(), 1000.0, 298.15, 0.5)) <= 1e-8);
}

TEST_CASE("array current reduces to the cell model for ns = np = 1") {
    PvArraySpec spec = single_cell_spec();
    OperatingEnv stc{1000.0, 298.15};
    for (int k = 0; k <= 50; ++k) {
        const double v = 0.55 * k / 50.0;
        CHECK(std::abs(array_current(spec, stc, v) - cell_current(spec.cell, stc, v)) <= 1e-9);
    }
}

TEST_CASE("array current doubles with np at the same per-module operating point") {
    PvArraySpec one;
    PvArraySpec two = one;
    two.np = 2;
    OperatingEnv stc{1000.0, 298.15};
    for (double v : {2.0, 10.0, 15.0, 18.0}) {
        const double i1 = array_current(one, stc, v);
        const double i2 = array_current(two, stc, v);
        CHECK(std::abs(i2 - 2.0 * i1) <= 1e-8);
    }
}

TEST_CASE("array current is negative beyond the open-circuit voltage") {
    PvArraySpec spec;
    OperatingEnv stc{1000.0, 298.15};
    const double voc = open_circuit_voltage(spec, stc);
    const double beyond = voc + 1.0;
    CHECK(array_current(spec, stc, beyond) < 0.0);
    CHECK(oracle_array_current(spec, 1000.0, 298.15, beyond) < 0.0);
}

TEST_CASE("negative terminal voltage is rejected") {
    PvArraySpec spec;
    CHECK_THROWS_AS((void)array_current(spec, {1000.0, 298.15}, -0.5), DomainError);
    CHECK_THROWS_AS((void)cell_current(spec.cell, {1000.0, 298.15}, -0.5), DomainError);
}

TEST_CASE("solver agrees with the oracle over the (V, G, T) grid") {
    PvArraySpec spec;
    for (double g : {0.0, 200.0, 600.0, 1000.0}) {
        for (double t : {273.15, 298.15, 323.15}) {
            for (int k = 0; k < 50; ++k) {
                const double v = 22.0 * k / 49.0;
                const double newton = array_current(spec, {g, t}, v);
                CHECK(std::abs(oracle_residual(spec, g, t, v, newton)) <= 1e-9);
                CHECK(std::abs(newton - oracle_array_current(spec, g, t, v)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("iv_sweep endpoints and monotone current") {
    PvArraySpec spec;
    OperatingEnv stc{1000.0, 298.15};

    const IvCurve ends = iv_sweep(spec, stc, 2);
    REQUIRE(ends.size() == 2);
    CHECK(ends.front().v == 0.0);
    CHECK(ends.front().i == doctest::Approx(1.24973966653).epsilon(1e-9));
    CHECK(std::abs(ends.back().i) <= 1e-6);

    const IvCurve curve = iv_sweep(spec, stc, 1001);
    for (size_t k = 1; k < curve.size(); ++k) {
        CHECK(curve[k].v > curve[k - 1].v);
        CHECK(curve[k].i <= curve[k - 1].i + 1e-12);
        CHECK(curve[k].p == curve[k].v * curve[k].i);
    }
}

TEST_CASE("iv_sweep in the dark collapses to the origin") {
    PvArraySpec spec;
    const IvCurve dark = iv_sweep(spec, {0.0, 298.15}, 100);
    REQUIRE(dark.size() == 1);
    CHECK(dark.front().v == 0.0);
    CHECK(std::abs(dark.front().i) <= 1e-9);
}

TEST_CASE("MPP power rises with irradiance and falls with temperature") {
    PvArraySpec spec;

    double prev = -1.0;
    for (double g : {200.0, 400.0, 600.0, 800.0, 1000.0}) {
        const double p = find_mpp(iv_sweep(spec, {g, 298.15}, 1001)).p;
        CHECK(p > prev);
        prev = p;
    }

    const double p_cool = find_mpp(iv_sweep(spec, {1000.0, 298.15}, 1001)).p;
    const double p_hot = find_mpp(iv_sweep(spec, {1000.0, 318.15}, 1001)).p;
    CHECK(p_hot < p_cool);

    // pointwise power is lower when hot across the upper voltage range
    const double voc_cool = open_circuit_voltage(spec, {1000.0, 298.15});
    for (int k = 0; k <= 20; ++k) {
        const double v = voc_cool * (0.75 + 0.20 * k / 20.0);
        const double p25 = v * array_current(spec, {1000.0, 298.15}, v);
        const double p45 = v * array_current(spec, {1000.0, 318.15}, v);
        CHECK(p45 < p25);
    }
}

TEST_CASE("find_mpp basics") {
    CHECK_THROWS_AS((void)find_mpp(IvCurve{}), EmptyCurve);

    IvCurve single{{3.0, 2.0, 6.0}};
    CHECK(find_mpp(single).p == 6.0);

    // p profile [0, 5, 9, 4, 0] over ascending voltages
    IvCurve curve;
    const double ps[] = {0.0, 5.0, 9.0, 4.0, 0.0};
    for (int k = 0; k < 5; ++k) {
        const double v = k + 1.0;
        curve.push_back({v, ps[k] / v, ps[k]});
    }
    CHECK(find_mpp(curve).p == 9.0);
    CHECK(find_mpp(curve).v == 3.0);

    // ties break toward the lowest voltage
    IvCurve tie{{1.0, 4.0, 4.0}, {2.0, 2.0, 4.0}};
    CHECK(find_mpp(tie).v == 1.0);
}

TEST_CASE("find_mpp agrees with a dense-sweep oracle within one grid cell") {
    PvArraySpec spec;
    OperatingEnv stc{1000.0, 298.15};
    const IvCurve coarse = iv_sweep(spec, stc, 500);
    const IvCurve dense = iv_sweep(spec, stc, 10000);
    const double cell_width = coarse[1].v - coarse[0].v;
    CHECK(std::abs(find_mpp(coarse).v - find_mpp(dense).v) <= cell_width);
}

TEST_CASE("efficiency follows (v*i)/(area*G)") {
    PvArraySpec spec;
    spec.area_m2 = 0.1;
    OperatingEnv env{1000.0, 298.15};

    CHECK(efficiency(spec, env, 5.0, 2.0) == doctest::Approx(0.10).epsilon(1e-12));
    CHECK(efficiency(spec, env, 5.0, 0.0) == 0.0);

    PvArraySpec doubled = spec;
    doubled.area_m2 = 0.2;
    CHECK(efficiency(doubled, env, 5.0, 4.0) ==
          doctest::Approx(efficiency(spec, env, 5.0, 2.0)).epsilon(1e-12));

    CHECK_THROWS_AS((void)efficiency(spec, {0.0, 298.15}, 5.0, 2.0), DomainError);
}
