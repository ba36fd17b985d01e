#include "solarsim/cli_commands.hpp"

#include "solarsim/csv.hpp"
#include "solarsim/errors.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <utility>
#include <vector>

namespace solarsim {

namespace {

// Dense-sweep MPP with memoization on the quantized operating point.
class MppTable {
public:
    explicit MppTable(const PvArraySpec& spec) : spec_(spec) {}

    double power_at(double g_wm2, double temp_k) {
        if (g_wm2 <= 0.0) return 0.0;
        const Key key{quantize(g_wm2), quantize(temp_k)};
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const IvCurve curve = iv_sweep(spec_, OperatingEnv{g_wm2, temp_k}, 1001);
        const double p = find_mpp(curve).p;
        cache_.emplace(key, p);
        return p;
    }

private:
    using Key = std::pair<std::int64_t, std::int64_t>;
    static std::int64_t quantize(double x) {
        return static_cast<std::int64_t>(std::llround(x * 1e6));
    }
    PvArraySpec spec_;
    std::map<Key, double> cache_;
};

double variance(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return var / static_cast<double>(xs.size());
}

int run_guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const NoConvergence& e) {
        err << "solver error: " << e.what() << "\n";
        return kExitSolverError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolverError;
    }
}

Scenario load_with_preset(const std::string& path, const std::optional<ThresholdPreset>& preset) {
    Scenario scenario = load_scenario_file(path);
    if (preset) {
        apply_threshold_preset(scenario, *preset);
        validate_scenario(scenario);
    }
    return scenario;
}

// Per-controller-cycle view of a run: the records where the MPPT updated.
std::vector<const TraceRecord*> controller_cycles(const RunResult& result, int period) {
    std::vector<const TraceRecord*> out;
    for (size_t k = 0; k < result.records.size(); k += static_cast<size_t>(period))
        out.push_back(&result.records[k]);
    return out;
}

} // namespace

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        Scenario scenario = load_with_preset(opt.config_path, opt.preset);
        if (opt.decimate > 0) scenario.decimate = opt.decimate;

        const RunResult result = run(scenario);
        write_text_file(opt.out_path, trace_to_csv(result.records, scenario.decimate));
        write_text_file(opt.out_path + ".resolved.json", scenario_to_json_text(scenario));

        double pump1_on_s = 0.0, pump2_on_s = 0.0;
        for (const auto& r : result.records) {
            pump1_on_s += r.pump1_relay ? scenario.dt_s : 0.0;
            pump2_on_s += r.pump2_relay ? scenario.dt_s : 0.0;
        }

        // The run itself succeeded; a solver failure while computing the
        // reference MPP only degrades this summary line.
        MppTable mpp(scenario.array);
        double eff_sum = 0.0;
        int eff_n = 0;
        try {
            for (size_t k = 0; k < result.records.size();
                 k += static_cast<size_t>(scenario.mppt_period_steps)) {
                const auto& r = result.records[k];
                if (r.g_wm2 < 5.0) continue;
                const double pmax = mpp.power_at(r.g_wm2, r.t_k);
                if (pmax <= 0.0) continue;
                eff_sum += r.panel_p / pmax;
                ++eff_n;
            }
        } catch (const NoConvergence&) {
            eff_n = 0;
        }

        out << "records: " << result.records.size() << "\n";
        if (!result.records.empty())
            out << "final soc_pct: " << csv_number(result.records.back().soc_pct) << "\n";
        out << "pump1 on-time_s: " << csv_number(pump1_on_s) << "\n";
        out << "pump2 on-time_s: " << csv_number(pump2_on_s) << "\n";
        out << "panel energy_wh: " << csv_number(result.ledger.panel_energy_wh) << "\n";
        out << "load energy_wh: " << csv_number(result.ledger.load_energy_wh) << "\n";
        out << "curtailed_wh: " << csv_number(result.ledger.curtailed_wh) << "\n";
        out << "delivered to soil_l: " << csv_number(result.ledger.delivered_to_soil_l) << "\n";
        out << "mppt mean efficiency vs dense-sweep mpp: "
            << (eff_n > 0 ? csv_number(eff_sum / eff_n) : "n/a") << "\n";
        return kExitOk;
    });
}

int cmd_iv_sweep(const IvSweepOptions& opt, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        if (opt.points < 2) throw ConfigError("iv-sweep: points must be >= 2");
        if (opt.irradiance_wm2 < 0.0) throw ConfigError("iv-sweep: irradiance must be >= 0");
        const PvArraySpec spec = opt.config_path.empty()
                                     ? default_scenario().array
                                     : load_scenario_file(opt.config_path).array;
        const OperatingEnv env{opt.irradiance_wm2, opt.temp_c + 273.15};
        const IvCurve curve = iv_sweep(spec, env, opt.points);
        write_text_file(opt.out_path, curve_to_csv(curve));
        const IvPoint mpp = find_mpp(curve);
        out << "vmpp_v: " << csv_number(mpp.v) << "\n";
        out << "impp_a: " << csv_number(mpp.i) << "\n";
        out << "pmpp_w: " << csv_number(mpp.p) << "\n";
        if (opt.irradiance_wm2 > 0.0)
            out << "efficiency_at_mpp: " << csv_number(efficiency(spec, env, mpp.v, mpp.i))
                << "\n";
        return kExitOk;
    });
}

int cmd_mppt_compare(const MpptCompareOptions& opt, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        const Scenario base = load_with_preset(opt.config_path, opt.preset);

        struct Variant {
            const char* name;
            MpptAlgorithm algorithm;
            PoDirectionRule rule;
        };
        const Variant variants[3] = {
            {"po_standard", MpptAlgorithm::PerturbObserve, PoDirectionRule::Standard},
            {"po_inverted", MpptAlgorithm::PerturbObserve, PoDirectionRule::Inverted},
            {"ic", MpptAlgorithm::IncrementalConductance, PoDirectionRule::Standard},
        };

        auto run_variant = [&base](const Variant& v) {
            Scenario s = base;
            s.algorithm = v.algorithm;
            s.mppt.rule = v.rule;
            if (v.algorithm == MpptAlgorithm::IncrementalConductance && !(s.mppt.v_min > 0.0))
                s.mppt.v_min = 0.1;
            return run(s);
        };

        RunResult results[3];
        if (opt.jobs > 1) {
            std::future<RunResult> futures[3];
            for (int k = 0; k < 3; ++k)
                futures[k] = std::async(std::launch::async, run_variant, variants[k]);
            for (int k = 0; k < 3; ++k) results[k] = futures[k].get();
        } else {
            for (int k = 0; k < 3; ++k) results[k] = run_variant(variants[k]);
        }

        const int period = base.mppt_period_steps;
        std::vector<const TraceRecord*> cycles[3];
        for (int k = 0; k < 3; ++k) cycles[k] = controller_cycles(results[k], period);
        const size_t n_cycles = cycles[0].size();

        MppTable mpp(base.array);
        std::string csv = "cycle,time_s,g_wm2,mpp_p,po_standard_v_ref,po_standard_p,"
                          "po_inverted_v_ref,po_inverted_p,ic_v_ref,ic_p\n";
        std::vector<double> mpp_p(n_cycles, 0.0);
        for (size_t c = 0; c < n_cycles; ++c) {
            const TraceRecord& ref = *cycles[0][c];
            mpp_p[c] = mpp.power_at(ref.g_wm2, ref.t_k);
            csv += std::to_string(c);
            csv += ',';
            csv += csv_number(ref.time_s);
            csv += ',';
            csv += csv_number(ref.g_wm2);
            csv += ',';
            csv += csv_number(mpp_p[c]);
            for (int k = 0; k < 3; ++k) {
                csv += ',';
                csv += csv_number(cycles[k][c]->v_ref);
                csv += ',';
                csv += csv_number(cycles[k][c]->panel_p);
            }
            csv += '\n';
        }
        write_text_file(opt.out_path, csv);

        // Re-convergence is measured from the last irradiance knot: the first
        // cycle after it from which delivery holds >= 99% of the MPP for 10
        // consecutive cycles.
        const double t_last_knot = base.env.irradiance_wm2.back().t_s;
        for (int k = 0; k < 3; ++k) {
            std::vector<double> vrefs;
            double eff_sum = 0.0;
            int eff_n = 0;
            for (size_t c = 0; c < n_cycles; ++c) {
                if (mpp_p[c] > 0.0) {
                    eff_sum += cycles[k][c]->panel_p / mpp_p[c];
                    ++eff_n;
                }
                if (c >= 3 * n_cycles / 4) vrefs.push_back(cycles[k][c]->v_ref);
            }
            long reconverge = -1;
            int streak = 0;
            long cycles_after = 0;
            for (size_t c = 0; c < n_cycles; ++c) {
                if (cycles[k][c]->time_s < t_last_knot) continue;
                ++cycles_after;
                const bool good = mpp_p[c] > 0.0 && cycles[k][c]->panel_p >= 0.99 * mpp_p[c];
                streak = good ? streak + 1 : 0;
                if (streak == 10 && reconverge < 0) reconverge = cycles_after - 10;
            }
            out << variants[k].name << " mean efficiency: "
                << (eff_n ? csv_number(eff_sum / eff_n) : "n/a") << "\n";
            out << variants[k].name << " steady v_ref variance: "
                << csv_number(variance(vrefs)) << "\n";
            out << variants[k].name << " cycles to reconverge after t="
                << csv_number(t_last_knot) << ": "
                << (reconverge >= 0 ? std::to_string(reconverge) : "n/a") << "\n";
        }
        return kExitOk;
    });
}

} // namespace solarsim
