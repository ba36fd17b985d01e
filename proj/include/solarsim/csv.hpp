#ifndef SOLARSIM_CSV_HPP
#define SOLARSIM_CSV_HPP

#include "solarsim/sim.hpp"

#include <string>
#include <vector>

namespace solarsim {

/// Fixed trace header; the column order is part of the output contract.
extern const char* const kTraceCsvHeader;

/// One number rendered with 9 significant digits ("%.9g").
std::string csv_number(double value);

/// Full trace document, one row per kept record (every `decimate`-th).
std::string trace_to_csv(const std::vector<TraceRecord>& records, int decimate = 1);

/// v,i,p document for a swept curve.
std::string curve_to_csv(const IvCurve& curve);

void write_text_file(const std::string& path, const std::string& content);

} // namespace solarsim

#endif
