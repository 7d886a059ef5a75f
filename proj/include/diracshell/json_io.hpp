#pragma once

// JSON records and CSV exports for the spectral reports. All output is
// deterministic: fixed key order, shortest round-trip float formatting,
// trailing newline.

#include <string>
#include <vector>

#include <json.hpp>

#include "diracshell/field_check.hpp"
#include "diracshell/shell_spectra.hpp"

namespace diracshell {

inline constexpr const char* kSchemaTag = "dirac-shell/1";

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

nlohmann::ordered_json spectrum_json(const SpectrumReport& report);
nlohmann::ordered_json zero_modes_json(const ZeroModeScan& scan,
                                       double lambda_lo, double lambda_hi,
                                       int steps);
nlohmann::ordered_json field_check_json(const FieldCheckReport& report);

// CSV of the s_min(lambda) curve: header "lambda,s_min".
void write_scan_csv(const std::string& path, const ZeroModeScan& scan);

// Generic CSV writer; every cell is formatted with format_double.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace diracshell
