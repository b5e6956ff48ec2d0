// Structured verification records: one check per identity tested, sweep
// tables for CSV export, JSON serialization of the whole run.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace heatindex {

struct CheckRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<double> tail_bound;
  std::optional<double> threshold;
  std::string notes;
};

struct SweepTable {
  std::string name;  // becomes <name>.csv
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct VerificationReport {
  std::string suite;
  std::string timestamp;  // ISO-8601, UTC
  double seconds = 0.0;
  std::vector<CheckRecord> checks;
  std::vector<SweepTable> tables;

  bool overall_pass() const;
  CheckRecord& add_check(const std::string& name, double lhs, double rhs,
                         double tolerance);
  std::string to_json() const;
  // Writes report.json plus one CSV per table into dir (created if needed).
  // Throws std::runtime_error with the offending path on I/O failure.
  void write(const std::string& dir) const;
};

std::string iso8601_utc_now();
// Deterministic shortest-roundtrip formatting used in every CSV cell.
std::string format_double(double v);

}  // namespace heatindex
