#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace heatindex {

bool VerificationReport::overall_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

CheckRecord& VerificationReport::add_check(const std::string& name, double lhs,
                                           double rhs, double tolerance) {
  CheckRecord c;
  c.name = name;
  c.lhs = lhs;
  c.rhs = rhs;
  c.abs_err = std::abs(lhs - rhs);
  c.rel_err = std::abs(rhs) > 0 ? c.abs_err / std::abs(rhs) : c.abs_err;
  c.tolerance = tolerance;
  c.pass = c.abs_err <= tolerance;
  checks.push_back(c);
  return checks.back();
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["timestamp"] = timestamp;
  j["seconds"] = seconds;
  j["overall_pass"] = overall_pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["lhs"] = c.lhs;
    jc["rhs"] = c.rhs;
    jc["abs_err"] = c.abs_err;
    jc["rel_err"] = c.rel_err;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    if (c.tail_bound) jc["tail_bound"] = *c.tail_bound;
    if (c.threshold) jc["threshold"] = *c.threshold;
    if (!c.notes.empty()) jc["notes"] = c.notes;
    j["checks"].push_back(jc);
  }
  j["tables"] = nlohmann::json::array();
  for (const auto& t : tables) j["tables"].push_back(t.name);
  return j.dump(2);
}

void VerificationReport::write(const std::string& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir);
  {
    fs::path p = fs::path(dir) / "report.json";
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot open " + p.string());
    os << to_json() << "\n";
  }
  for (const auto& t : tables) {
    fs::path p = fs::path(dir) / (t.name + ".csv");
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot open " + p.string());
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << format_double(row[i]);
      os << "\n";
    }
    if (!os) throw std::runtime_error("write failed on " + p.string());
  }
}

std::string iso8601_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace heatindex
