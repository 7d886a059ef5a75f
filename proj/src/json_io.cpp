#include "diracshell/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace diracshell {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json spectrum_json(const SpectrumReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "spectrum";
  j["mesh"] = report.mesh_label;
  j["m"] = report.m;
  j["excluded"] = report.excluded_count;
  nlohmann::ordered_json modes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.a_values.size(); ++i) {
    const double a = report.a_values[i];
    if (a <= -0.25) continue;
    nlohmann::ordered_json entry;
    entry["a"] = a;
    entry["lambda"] = 2.0 / std::sqrt(1.0 + 4.0 * a);
    if (i < report.residuals.size())
      entry["residual"] = report.residuals[i];
    else
      entry["residual"] = nullptr;
    modes.push_back(entry);
  }
  j["modes"] = modes;
  j["lambda_values"] = report.lambda_values;
  return j;
}

nlohmann::ordered_json zero_modes_json(const ZeroModeScan& scan,
                                       double lambda_lo, double lambda_hi,
                                       int steps) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "zero-modes";
  j["lambda_range"] = {lambda_lo, lambda_hi};
  j["steps"] = steps;
  j["anti_hermitian_bound"] = scan.anti_hermitian_bound;
  nlohmann::ordered_json modes = nlohmann::ordered_json::array();
  for (const ZeroModeResult& mode : scan.modes) {
    nlohmann::ordered_json entry;
    entry["lambda_star"] = mode.lambda_star;
    entry["s_min"] = mode.smallest_singular_value;
    entry["at_critical_two"] = mode.at_critical_two;
    modes.push_back(entry);
  }
  j["modes"] = modes;
  return j;
}

nlohmann::ordered_json field_check_json(const FieldCheckReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "field-check";
  j["offsets"] = report.offsets;
  j["deviation_plus"] = report.deviation_plus;
  j["deviation_minus"] = report.deviation_minus;
  j["jump_error"] = report.jump_error;
  if (report.reproducing_residual)
    j["reproducing_residual"] = *report.reproducing_residual;
  else
    j["reproducing_residual"] = nullptr;
  j["sample_count"] = report.sample_count;
  return j;
}

void write_scan_csv(const std::string& path, const ZeroModeScan& scan) {
  std::vector<std::vector<double>> rows;
  rows.reserve(scan.curve.size());
  for (const auto& [lambda, s] : scan.curve) rows.push_back({lambda, s});
  write_csv(path, {"lambda", "s_min"}, rows);
}

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write_csv: write failed");
}

}  // namespace diracshell
