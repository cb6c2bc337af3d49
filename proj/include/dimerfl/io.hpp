#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dimerfl/estimation.hpp"
#include "dimerfl/spectrum.hpp"

namespace dimerfl {

/// Schema version line written at the top of every CSV.
inline constexpr const char* kCsvHeader = "# dimer-fluorescence v1";

/// Deterministic float formatting used in all text output ("%.15g").
std::string format_number(double x);

/// Generic CSV table: comment header, column names, then rows.
void write_csv(std::ostream& os, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

/// columns: omega, total, s1, s2, s12, s21
void write_spectrum_csv(std::ostream& os, const SpectralSeries& series);

std::string fisher_report_json(const FisherReport& rep);
void write_fisher_map_csv(std::ostream& os, const FisherMap& map);

std::string ladder_json(const DressedLadder& lad);

}  // namespace dimerfl
