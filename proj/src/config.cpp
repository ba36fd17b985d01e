#include "solarsim/config.hpp"

#include "solarsim/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace solarsim {

using nlohmann::json;

namespace {

json schedule_to_json(const Schedule& s) {
    json arr = json::array();
    for (const auto& k : s) arr.push_back(json::array({k.t_s, k.value}));
    return arr;
}

Schedule schedule_from_json(const json& j, const std::string& path) {
    Schedule out;
    if (j.is_number()) {
        out.push_back({0.0, j.get<double>()});
        return out;
    }
    if (!j.is_array() || j.empty())
        throw ConfigError(path + ": expected a number or a non-empty array of [t_s, value] pairs");
    for (const auto& el : j) {
        if (!el.is_array() || el.size() != 2 || !el[0].is_number() || !el[1].is_number())
            throw ConfigError(path + ": each schedule knot must be a [t_s, value] number pair");
        out.push_back({el[0].get<double>(), el[1].get<double>()});
    }
    for (size_t k = 1; k < out.size(); ++k)
        if (!(out[k].t_s > out[k - 1].t_s))
            throw ConfigError(path + ": knot times must be strictly increasing");
    return out;
}

std::string po_rule_name(PoDirectionRule r) {
    return r == PoDirectionRule::Standard ? "standard" : "inverted";
}

std::string algorithm_name(MpptAlgorithm a) {
    return a == MpptAlgorithm::PerturbObserve ? "po" : "ic";
}

std::string converter_name(ConverterKind c) {
    return c == ConverterKind::IdealBuck ? "buck" : "boost";
}

PoDirectionRule po_rule_from(const std::string& s, const std::string& path) {
    if (s == "standard") return PoDirectionRule::Standard;
    if (s == "inverted") return PoDirectionRule::Inverted;
    throw ConfigError(path + ": expected \"standard\" or \"inverted\", got \"" + s + "\"");
}

MpptAlgorithm algorithm_from(const std::string& s, const std::string& path) {
    if (s == "po") return MpptAlgorithm::PerturbObserve;
    if (s == "ic") return MpptAlgorithm::IncrementalConductance;
    throw ConfigError(path + ": expected \"po\" or \"ic\", got \"" + s + "\"");
}

ConverterKind converter_from(const std::string& s, const std::string& path) {
    if (s == "buck") return ConverterKind::IdealBuck;
    if (s == "boost") return ConverterKind::Boost;
    throw ConfigError(path + ": expected \"buck\" or \"boost\", got \"" + s + "\"");
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["scenario"] = {{"duration_s", s.duration_s},
                     {"dt_s", s.dt_s},
                     {"mppt_period_steps", s.mppt_period_steps},
                     {"seed", s.seed},
                     {"decimate", s.decimate}};
    j["array"] = {{"ns", s.array.ns},
                  {"np", s.array.np},
                  {"area_m2", s.array.area_m2},
                  {"rated_power_w", s.array.rated_power_w},
                  {"cell",
                   {{"iph_stc_a", s.array.cell.iph_stc},
                    {"io1_a", s.array.cell.io1},
                    {"io2_a", s.array.cell.io2},
                    {"rs_ohm", s.array.cell.rs},
                    {"rp_ohm", s.array.cell.rp},
                    {"a1", s.array.cell.a1},
                    {"a2", s.array.cell.a2},
                    {"alpha_i_per_k", s.array.cell.alpha_i},
                    {"eg_ev", s.array.cell.eg_ev}}}};
    j["mppt"] = {{"algorithm", algorithm_name(s.algorithm)},
                 {"po_rule", po_rule_name(s.mppt.rule)},
                 {"step_v", s.mppt.step_v},
                 {"v_min_v", s.mppt.v_min},
                 {"v_max_v", s.mppt.v_max},
                 {"ic_epsilon_a_per_v", s.mppt.ic_epsilon},
                 {"converter", converter_name(s.converter)}};
    j["battery"] = {{"capacity_ah", s.initial.battery.capacity_ah},
                    {"v_nominal_v", s.initial.battery.v_nominal},
                    {"r_internal_ohm", s.initial.battery.r_internal}};
    j["charge_relay"] = {{"soc_reconnect_pct", s.charge_relay.soc_reconnect_pct},
                         {"soc_cutoff_pct", s.charge_relay.soc_cutoff_pct}};
    j["thresholds"] = {{"tank_on_pct", s.thresholds.tank_on_pct},
                       {"tank_off_pct", s.thresholds.tank_off_pct},
                       {"soil_wet_counts", s.thresholds.soil_wet_counts},
                       {"soil_dry_counts", s.thresholds.soil_dry_counts},
                       {"taper_start_tank_pct", s.thresholds.taper_start_tank_pct},
                       {"taper_start_soil_counts", s.thresholds.taper_start_soil_counts}};
    j["tracker"] = {{"steps_per_rev", s.tracker.stepper.steps_per_rev},
                    {"step_deg", s.tracker.stepper.step_deg},
                    {"ldr_offset_deg", s.tracker.ldr.offset_deg},
                    {"ldr_noise_counts", s.tracker.ldr.noise_counts},
                    {"decide_tolerance_counts", s.tracker.decide_tolerance_counts},
                    {"tilt_rate_deg_s", s.tracker.tilt_rate_deg_s},
                    {"elevation_rate_mm_s", s.tracker.elevation_rate_mm_s},
                    {"elevation_stroke_mm", s.tracker.elevation_stroke_mm}};
    j["tanks"] = {{"capacity_l", s.initial.tank1.capacity_l},
                  {"height_m", s.initial.tank1.height_m}};
    j["pump1"] = {{"max_flow_lpm", s.pump1.max_flow_lpm},
                  {"max_speed_rpm", s.pump1.max_speed_rpm},
                  {"rated_current_a", s.pump1.rated_current_a}};
    j["pump2"] = {{"max_flow_lpm", s.pump2.max_flow_lpm},
                  {"max_speed_rpm", s.pump2.max_speed_rpm},
                  {"rated_current_a", s.pump2.rated_current_a}};
    j["soil"] = {{"k_soil_per_l", s.soil.k_soil_per_l}, {"k_evap_per_s", s.soil.k_evap_per_s}};
    j["env"] = {{"irradiance_wm2", schedule_to_json(s.env.irradiance_wm2)},
                {"cell_temp_c", schedule_to_json(s.env.cell_temp_c)},
                {"sun_azimuth_deg", schedule_to_json(s.env.sun_azimuth_deg)},
                {"sun_elevation_deg", schedule_to_json(s.env.sun_elevation_deg)},
                {"elevation_target_mm", schedule_to_json(s.env.elevation_target_mm)}};
    j["initial"] = {{"soc_pct", s.initial.battery.soc_pct},
                    {"tank1_l", s.initial.tank1.volume_l},
                    {"tank2_l", s.initial.tank2.volume_l},
                    {"soil_moisture_fraction", s.initial.soil.moisture_fraction},
                    {"azimuth_steps", s.initial.pose.azimuth_steps},
                    {"tilt_deg", s.initial.pose.tilt_deg},
                    {"elevation_mm", s.initial.pose.elevation_mm},
                    {"v_ref_v", s.initial.mppt.v_ref},
                    {"pump1_relay_on", s.initial.pump1.relay_on},
                    {"pump2_relay_on", s.initial.pump2.relay_on},
                    {"loads_connected", s.initial.loads_connected}};
    return j;
}

// Every provided key must exist in the schema (built from the defaults);
// schedules additionally accept a bare number.
void check_keys(const json& provided, const json& schema, const std::string& path) {
    if (!provided.is_object()) {
        if (schema.is_object())
            throw ConfigError(path + ": expected an object");
        return;
    }
    for (const auto& [key, value] : provided.items()) {
        const std::string child = path + "/" + key;
        if (!schema.contains(key)) throw ConfigError("unknown key: " + child);
        const json& sv = schema.at(key);
        if (sv.is_object()) {
            check_keys(value, sv, child);
        } else if (sv.is_array()) {
            if (!value.is_array() && !value.is_number())
                throw ConfigError(child + ": expected a schedule (number or array)");
        } else if (sv.is_string()) {
            if (!value.is_string()) throw ConfigError(child + ": expected a string");
        } else if (sv.is_boolean()) {
            if (!value.is_boolean()) throw ConfigError(child + ": expected a boolean");
        } else if (sv.is_number()) {
            if (!value.is_number()) throw ConfigError(child + ": expected a number");
        }
    }
}

template <typename T>
void read_into(const json& section, const char* key, T& target) {
    if (section.contains(key)) target = section.at(key).get<T>();
}

} // namespace

Scenario default_scenario() {
    Scenario s;
    s.env.irradiance_wm2 = {{0.0, 1000.0}};
    s.env.cell_temp_c = {{0.0, 25.0}};
    s.env.sun_azimuth_deg = {{0.0, 180.0}};
    s.env.sun_elevation_deg = {{0.0, 45.0}};
    s.env.elevation_target_mm = {{0.0, 0.0}};

    s.initial.battery.soc_pct = 50.0;
    s.initial.tank1.volume_l = 13.8;
    s.initial.tank2.volume_l = 1.0;
    s.initial.soil.moisture_fraction = 0.2;
    // Pose aligned with the default sun direction (az 180 deg, el 45 deg).
    s.initial.pose.azimuth_steps = 100;
    s.initial.pose.tilt_deg = 45.0;
    s.initial.mppt.v_ref = 12.0;
    return s;
}

void apply_threshold_preset(Scenario& scenario, ThresholdPreset preset) {
    switch (preset) {
    case ThresholdPreset::SystemModel:
        scenario.thresholds.tank_on_pct = 10.0;
        scenario.thresholds.tank_off_pct = 85.0;
        break;
    case ThresholdPreset::Results:
        scenario.thresholds.tank_on_pct = 20.0;
        scenario.thresholds.tank_off_pct = 90.0;
        break;
    }
}

Scenario scenario_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("top level must be a JSON object");

    Scenario s = default_scenario();
    check_keys(j, scenario_to_json(s), "");

    if (j.contains("scenario")) {
        const json& sec = j["scenario"];
        read_into(sec, "duration_s", s.duration_s);
        read_into(sec, "dt_s", s.dt_s);
        read_into(sec, "mppt_period_steps", s.mppt_period_steps);
        read_into(sec, "seed", s.seed);
        read_into(sec, "decimate", s.decimate);
    }
    if (j.contains("array")) {
        const json& sec = j["array"];
        read_into(sec, "ns", s.array.ns);
        read_into(sec, "np", s.array.np);
        read_into(sec, "area_m2", s.array.area_m2);
        read_into(sec, "rated_power_w", s.array.rated_power_w);
        if (sec.contains("cell")) {
            const json& cell = sec["cell"];
            read_into(cell, "iph_stc_a", s.array.cell.iph_stc);
            read_into(cell, "io1_a", s.array.cell.io1);
            read_into(cell, "io2_a", s.array.cell.io2);
            read_into(cell, "rs_ohm", s.array.cell.rs);
            read_into(cell, "rp_ohm", s.array.cell.rp);
            read_into(cell, "a1", s.array.cell.a1);
            read_into(cell, "a2", s.array.cell.a2);
            read_into(cell, "alpha_i_per_k", s.array.cell.alpha_i);
            read_into(cell, "eg_ev", s.array.cell.eg_ev);
        }
    }
    if (j.contains("mppt")) {
        const json& sec = j["mppt"];
        if (sec.contains("algorithm"))
            s.algorithm = algorithm_from(sec["algorithm"].get<std::string>(), "/mppt/algorithm");
        if (sec.contains("po_rule"))
            s.mppt.rule = po_rule_from(sec["po_rule"].get<std::string>(), "/mppt/po_rule");
        if (sec.contains("converter"))
            s.converter = converter_from(sec["converter"].get<std::string>(), "/mppt/converter");
        read_into(sec, "step_v", s.mppt.step_v);
        read_into(sec, "v_min_v", s.mppt.v_min);
        read_into(sec, "v_max_v", s.mppt.v_max);
        read_into(sec, "ic_epsilon_a_per_v", s.mppt.ic_epsilon);
    }
    if (j.contains("battery")) {
        const json& sec = j["battery"];
        read_into(sec, "capacity_ah", s.initial.battery.capacity_ah);
        read_into(sec, "v_nominal_v", s.initial.battery.v_nominal);
        read_into(sec, "r_internal_ohm", s.initial.battery.r_internal);
    }
    if (j.contains("charge_relay")) {
        const json& sec = j["charge_relay"];
        read_into(sec, "soc_reconnect_pct", s.charge_relay.soc_reconnect_pct);
        read_into(sec, "soc_cutoff_pct", s.charge_relay.soc_cutoff_pct);
    }
    if (j.contains("thresholds")) {
        const json& sec = j["thresholds"];
        read_into(sec, "tank_on_pct", s.thresholds.tank_on_pct);
        read_into(sec, "tank_off_pct", s.thresholds.tank_off_pct);
        read_into(sec, "soil_wet_counts", s.thresholds.soil_wet_counts);
        read_into(sec, "soil_dry_counts", s.thresholds.soil_dry_counts);
        read_into(sec, "taper_start_tank_pct", s.thresholds.taper_start_tank_pct);
        read_into(sec, "taper_start_soil_counts", s.thresholds.taper_start_soil_counts);
    }
    if (j.contains("tracker")) {
        const json& sec = j["tracker"];
        read_into(sec, "steps_per_rev", s.tracker.stepper.steps_per_rev);
        read_into(sec, "step_deg", s.tracker.stepper.step_deg);
        read_into(sec, "ldr_offset_deg", s.tracker.ldr.offset_deg);
        read_into(sec, "ldr_noise_counts", s.tracker.ldr.noise_counts);
        read_into(sec, "decide_tolerance_counts", s.tracker.decide_tolerance_counts);
        read_into(sec, "tilt_rate_deg_s", s.tracker.tilt_rate_deg_s);
        read_into(sec, "elevation_rate_mm_s", s.tracker.elevation_rate_mm_s);
        read_into(sec, "elevation_stroke_mm", s.tracker.elevation_stroke_mm);
    }
    if (j.contains("tanks")) {
        const json& sec = j["tanks"];
        double capacity = s.initial.tank1.capacity_l;
        double height = s.initial.tank1.height_m;
        read_into(sec, "capacity_l", capacity);
        read_into(sec, "height_m", height);
        s.initial.tank1.capacity_l = s.initial.tank2.capacity_l = capacity;
        s.initial.tank1.height_m = s.initial.tank2.height_m = height;
    }
    if (j.contains("pump1")) {
        const json& sec = j["pump1"];
        read_into(sec, "max_flow_lpm", s.pump1.max_flow_lpm);
        read_into(sec, "max_speed_rpm", s.pump1.max_speed_rpm);
        read_into(sec, "rated_current_a", s.pump1.rated_current_a);
    }
    if (j.contains("pump2")) {
        const json& sec = j["pump2"];
        read_into(sec, "max_flow_lpm", s.pump2.max_flow_lpm);
        read_into(sec, "max_speed_rpm", s.pump2.max_speed_rpm);
        read_into(sec, "rated_current_a", s.pump2.rated_current_a);
    }
    if (j.contains("soil")) {
        const json& sec = j["soil"];
        read_into(sec, "k_soil_per_l", s.soil.k_soil_per_l);
        read_into(sec, "k_evap_per_s", s.soil.k_evap_per_s);
    }
    if (j.contains("env")) {
        const json& sec = j["env"];
        if (sec.contains("irradiance_wm2"))
            s.env.irradiance_wm2 = schedule_from_json(sec["irradiance_wm2"], "/env/irradiance_wm2");
        if (sec.contains("cell_temp_c"))
            s.env.cell_temp_c = schedule_from_json(sec["cell_temp_c"], "/env/cell_temp_c");
        if (sec.contains("sun_azimuth_deg"))
            s.env.sun_azimuth_deg =
                schedule_from_json(sec["sun_azimuth_deg"], "/env/sun_azimuth_deg");
        if (sec.contains("sun_elevation_deg"))
            s.env.sun_elevation_deg =
                schedule_from_json(sec["sun_elevation_deg"], "/env/sun_elevation_deg");
        if (sec.contains("elevation_target_mm"))
            s.env.elevation_target_mm =
                schedule_from_json(sec["elevation_target_mm"], "/env/elevation_target_mm");
    }
    if (j.contains("initial")) {
        const json& sec = j["initial"];
        read_into(sec, "soc_pct", s.initial.battery.soc_pct);
        read_into(sec, "tank1_l", s.initial.tank1.volume_l);
        read_into(sec, "tank2_l", s.initial.tank2.volume_l);
        read_into(sec, "soil_moisture_fraction", s.initial.soil.moisture_fraction);
        read_into(sec, "azimuth_steps", s.initial.pose.azimuth_steps);
        read_into(sec, "tilt_deg", s.initial.pose.tilt_deg);
        read_into(sec, "elevation_mm", s.initial.pose.elevation_mm);
        read_into(sec, "v_ref_v", s.initial.mppt.v_ref);
        read_into(sec, "pump1_relay_on", s.initial.pump1.relay_on);
        read_into(sec, "pump2_relay_on", s.initial.pump2.relay_on);
        read_into(sec, "loads_connected", s.initial.loads_connected);
    }

    s.initial.pump1.max_flow_lpm = s.pump1.max_flow_lpm;
    s.initial.pump1.max_speed_rpm = s.pump1.max_speed_rpm;
    s.initial.pump2.max_flow_lpm = s.pump2.max_flow_lpm;
    s.initial.pump2.max_speed_rpm = s.pump2.max_speed_rpm;

    validate_scenario(s);
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return scenario_from_json_text(ss.str());
}

std::string scenario_to_json_text(const Scenario& scenario) {
    return scenario_to_json(scenario).dump(2) + "\n";
}

void validate_scenario(const Scenario& s) {
    auto fail = [](const std::string& msg) { throw ConfigError("invalid scenario: " + msg); };

    if (!(s.dt_s > 0.0)) fail("scenario: dt_s must be > 0");
    if (s.duration_s < 0.0) fail("scenario: duration_s must be >= 0");
    if (s.duration_s > 0.0 && s.dt_s > s.duration_s)
        fail("scenario: dt_s must not exceed duration_s");
    if (s.mppt_period_steps < 1) fail("scenario: mppt_period_steps must be >= 1");
    if (s.decimate < 1) fail("scenario: decimate must be >= 1");

    const PvCellParams& c = s.array.cell;
    if (!(c.iph_stc >= 0.0)) fail("array.cell: iph_stc_a must be >= 0");
    if (!(c.io1 > 0.0)) fail("array.cell: io1_a must be > 0");
    if (!(c.io2 >= 0.0)) fail("array.cell: io2_a must be >= 0");
    if (!(c.rs >= 0.0)) fail("array.cell: rs_ohm must be >= 0");
    if (!(c.rp > 0.0)) fail("array.cell: rp_ohm must be > 0");
    if (!(c.a1 >= 1.0)) fail("array.cell: a1 must be >= 1");
    if (!(c.a2 >= 1.0)) fail("array.cell: a2 must be >= 1");
    if (!(c.eg_ev >= 0.0)) fail("array.cell: eg_ev must be >= 0");
    if (s.array.ns < 1) fail("array: ns must be >= 1");
    if (s.array.np < 1) fail("array: np must be >= 1");
    if (!(s.array.area_m2 > 0.0)) fail("array: area_m2 must be > 0");
    if (!(s.array.rated_power_w > 0.0)) fail("array: rated_power_w must be > 0");

    if (!(s.mppt.step_v > 0.0)) fail("mppt: step_v must be > 0");
    if (!(s.mppt.v_min < s.mppt.v_max)) fail("mppt: v_min_v must be < v_max_v");
    if (!(s.mppt.ic_epsilon >= 0.0)) fail("mppt: ic_epsilon_a_per_v must be >= 0");
    if (s.algorithm == MpptAlgorithm::IncrementalConductance && !(s.mppt.v_min > 0.0))
        fail("mppt: v_min_v must be > 0 when algorithm is \"ic\"");
    if (s.initial.mppt.v_ref < s.mppt.v_min || s.initial.mppt.v_ref > s.mppt.v_max)
        fail("initial: v_ref_v must lie within [v_min_v, v_max_v]");

    const BatteryState& b = s.initial.battery;
    if (!(b.capacity_ah > 0.0)) fail("battery: capacity_ah must be > 0");
    if (!(b.r_internal >= 0.0)) fail("battery: r_internal_ohm must be >= 0");
    if (b.soc_pct < 0.0 || b.soc_pct > 100.0) fail("initial: soc_pct must lie within [0, 100]");
    if (!(s.charge_relay.soc_cutoff_pct < s.charge_relay.soc_reconnect_pct))
        fail("charge_relay: soc_cutoff_pct must be < soc_reconnect_pct");

    const ThresholdConfig& th = s.thresholds;
    if (!(th.tank_on_pct < th.taper_start_tank_pct && th.taper_start_tank_pct < th.tank_off_pct))
        fail("thresholds: tank_on_pct < taper_start_tank_pct < tank_off_pct violated");
    if (!(th.soil_wet_counts < th.soil_dry_counts))
        fail("thresholds: soil_wet_counts must be < soil_dry_counts");
    if (!(th.taper_start_soil_counts > th.soil_wet_counts))
        fail("thresholds: taper_start_soil_counts must be > soil_wet_counts");

    const TrackerConfig& tr = s.tracker;
    if (std::abs(tr.stepper.steps_per_rev * tr.stepper.step_deg - 360.0) > 1e-9)
        fail("tracker: steps_per_rev * step_deg must equal 360");
    if (!(tr.decide_tolerance_counts >= 0.0)) fail("tracker: decide_tolerance_counts must be >= 0");
    if (!(tr.tilt_rate_deg_s > 0.0)) fail("tracker: tilt_rate_deg_s must be > 0");
    if (!(tr.elevation_rate_mm_s >= 0.0)) fail("tracker: elevation_rate_mm_s must be >= 0");
    if (!(tr.elevation_stroke_mm > 0.0)) fail("tracker: elevation_stroke_mm must be > 0");
    if (!(tr.ldr.offset_deg > 0.0)) fail("tracker: ldr_offset_deg must be > 0");
    if (!(tr.ldr.noise_counts >= 0.0)) fail("tracker: ldr_noise_counts must be >= 0");

    for (const TankState* tank : {&s.initial.tank1, &s.initial.tank2}) {
        if (!(tank->capacity_l > 0.0)) fail("tanks: capacity_l must be > 0");
        if (!(tank->height_m > 0.0)) fail("tanks: height_m must be > 0");
        if (tank->volume_l < 0.0 || tank->volume_l > tank->capacity_l)
            fail("initial: tank volume must lie within [0, capacity_l]");
    }
    if (s.initial.soil.moisture_fraction < 0.0 || s.initial.soil.moisture_fraction > 1.0)
        fail("initial: soil_moisture_fraction must lie within [0, 1]");

    for (const PumpConfig* p : {&s.pump1, &s.pump2}) {
        if (!(p->max_flow_lpm > 0.0)) fail("pump: max_flow_lpm must be > 0");
        if (!(p->max_speed_rpm > 0.0)) fail("pump: max_speed_rpm must be > 0");
        if (!(p->rated_current_a >= 0.0)) fail("pump: rated_current_a must be >= 0");
    }
    if (!(s.soil.k_soil_per_l >= 0.0)) fail("soil: k_soil_per_l must be >= 0");
    if (!(s.soil.k_evap_per_s >= 0.0)) fail("soil: k_evap_per_s must be >= 0");

    struct Named {
        const Schedule* sched;
        const char* name;
    };
    for (const Named& n : {Named{&s.env.irradiance_wm2, "env.irradiance_wm2"},
                           Named{&s.env.cell_temp_c, "env.cell_temp_c"},
                           Named{&s.env.sun_azimuth_deg, "env.sun_azimuth_deg"},
                           Named{&s.env.sun_elevation_deg, "env.sun_elevation_deg"},
                           Named{&s.env.elevation_target_mm, "env.elevation_target_mm"}}) {
        if (n.sched->empty()) fail(std::string(n.name) + ": schedule must be non-empty");
        for (size_t k = 1; k < n.sched->size(); ++k)
            if (!((*n.sched)[k].t_s > (*n.sched)[k - 1].t_s))
                fail(std::string(n.name) + ": knot times must be strictly increasing");
    }
    for (const auto& k : s.env.irradiance_wm2)
        if (k.value < 0.0) fail("env.irradiance_wm2: values must be >= 0");
    for (const auto& k : s.env.cell_temp_c)
        if (k.value <= -273.15) fail("env.cell_temp_c: values must be above absolute zero");
    for (const auto& k : s.env.sun_elevation_deg)
        if (k.value < 0.0 || k.value > 90.0)
            fail("env.sun_elevation_deg: values must lie within [0, 90]");
    if (s.initial.pose.tilt_deg < 0.0 || s.initial.pose.tilt_deg > 180.0)
        fail("initial: tilt_deg must lie within [0, 180]");
}

} // namespace solarsim
