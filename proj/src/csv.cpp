#include "solarsim/csv.hpp"

#include "solarsim/errors.hpp"

#include <cstdio>
#include <fstream>

namespace solarsim {

const char* const kTraceCsvHeader =
    "time_s,g_wm2,t_k,panel_v,panel_i,panel_p,v_ref,duty,soc_pct,batt_v,"
    "tank1_pct,tank2_pct,soil_raw,soil_pct,pump1_relay,pump1_duty,pump1_rpm,"
    "pump2_relay,pump2_duty,pump2_rpm,azimuth_deg,tilt_deg,elevation_mm,curtailed_wh";

std::string csv_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::string trace_to_csv(const std::vector<TraceRecord>& records, int decimate) {
    if (decimate < 1) throw DomainError("trace_to_csv: decimate must be >= 1");
    std::string out(kTraceCsvHeader);
    out += '\n';
    for (size_t k = 0; k < records.size(); k += static_cast<size_t>(decimate)) {
        const TraceRecord& r = records[k];
        out += csv_number(r.time_s);
        out += ',';
        out += csv_number(r.g_wm2);
        out += ',';
        out += csv_number(r.t_k);
        out += ',';
        out += csv_number(r.panel_v);
        out += ',';
        out += csv_number(r.panel_i);
        out += ',';
        out += csv_number(r.panel_p);
        out += ',';
        out += csv_number(r.v_ref);
        out += ',';
        out += csv_number(r.duty);
        out += ',';
        out += csv_number(r.soc_pct);
        out += ',';
        out += csv_number(r.batt_v);
        out += ',';
        out += csv_number(r.tank1_pct);
        out += ',';
        out += csv_number(r.tank2_pct);
        out += ',';
        out += csv_number(r.soil_raw);
        out += ',';
        out += csv_number(r.soil_pct);
        out += ',';
        out += std::to_string(r.pump1_relay);
        out += ',';
        out += csv_number(r.pump1_duty);
        out += ',';
        out += csv_number(r.pump1_rpm);
        out += ',';
        out += std::to_string(r.pump2_relay);
        out += ',';
        out += csv_number(r.pump2_duty);
        out += ',';
        out += csv_number(r.pump2_rpm);
        out += ',';
        out += csv_number(r.azimuth_deg);
        out += ',';
        out += csv_number(r.tilt_deg);
        out += ',';
        out += csv_number(r.elevation_mm);
        out += ',';
        out += csv_number(r.curtailed_wh);
        out += '\n';
    }
    return out;
}

std::string curve_to_csv(const IvCurve& curve) {
    std::string out = "v,i,p\n";
    for (const auto& pt : curve) {
        out += csv_number(pt.v);
        out += ',';
        out += csv_number(pt.i);
        out += ',';
        out += csv_number(pt.p);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw SimError("cannot open for writing: " + path);
    f << content;
    if (!f) throw SimError("write failed: " + path);
}

} // namespace solarsim
