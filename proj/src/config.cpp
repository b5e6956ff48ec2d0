#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace heatindex {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  double d = std::stod(v, &pos);
  if (pos != v.size()) throw ConfigError("malformed number: " + v);
  return d;
}

int parse_int(const std::string& v) {
  std::size_t pos = 0;
  int i = std::stoi(v, &pos);
  if (pos != v.size()) throw ConfigError("malformed integer: " + v);
  return i;
}

std::vector<double> parse_double_list(const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split_list(v)) out.push_back(parse_double(s));
  if (out.empty()) throw ConfigError("empty numeric list");
  return out;
}

std::vector<int> parse_int_list(const std::string& v) {
  std::vector<int> out;
  for (const auto& s : split_list(v)) out.push_back(parse_int(s));
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

void require_monotone(const std::vector<double>& v, const std::string& name) {
  if (v.size() < 2) return;
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    inc &= v[i] > v[i - 1];
    dec &= v[i] < v[i - 1];
  }
  if (!inc && !dec)
    throw ConfigError("sweep '" + name + "' must be strictly monotone");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"suite.name", [](RunConfig& c, const std::string& v) { c.suite = v; }},
      {"model.flux_list",
       [](RunConfig& c, const std::string& v) { c.flux_list = parse_int_list(v); }},
      {"model.charge_list",
       [](RunConfig& c, const std::string& v) { c.charge_list = parse_int_list(v); }},
      {"model.landau_levels",
       [](RunConfig& c, const std::string& v) { c.landau_levels = parse_int(v); }},
      {"model.monopole_levels",
       [](RunConfig& c, const std::string& v) { c.monopole_levels = parse_int(v); }},
      {"model.torus_cutoff",
       [](RunConfig& c, const std::string& v) { c.torus_cutoff = parse_int(v); }},
      {"model.pairing_cutoffs",
       [](RunConfig& c, const std::string& v) { c.pairing_cutoffs = parse_int_list(v); }},
      {"model.bott_grid",
       [](RunConfig& c, const std::string& v) { c.bott_grid = parse_int(v); }},
      {"model.quadrature_grid",
       [](RunConfig& c, const std::string& v) { c.quadrature_grid = parse_int(v); }},
      {"model.fourier_support",
       [](RunConfig& c, const std::string& v) { c.fourier_support = parse_int(v); }},
      {"model.degree_cap",
       [](RunConfig& c, const std::string& v) { c.degree_cap = parse_int(v); }},
      {"sweep.heat_t",
       [](RunConfig& c, const std::string& v) { c.heat_t = parse_double_list(v); }},
      {"sweep.mehler_b",
       [](RunConfig& c, const std::string& v) { c.mehler_b = parse_double_list(v); }},
      {"sweep.mehler_t",
       [](RunConfig& c, const std::string& v) { c.mehler_t = parse_double_list(v); }},
      {"sweep.u",
       [](RunConfig& c, const std::string& v) { c.u_sweep = parse_double_list(v); }},
      {"sweep.rescale_twists",
       [](RunConfig& c, const std::string& v) { c.rescale_twists = parse_double_list(v); }},
      {"sweep.jlo_t",
       [](RunConfig& c, const std::string& v) { c.jlo_t = parse_double_list(v); }},
      {"sweep.pairing_t",
       [](RunConfig& c, const std::string& v) { c.pairing_t = parse_double_list(v); }},
      {"sweep.conj_t",
       [](RunConfig& c, const std::string& v) { c.conj_t = parse_double_list(v); }},
      {"sweep.conj_cutoff",
       [](RunConfig& c, const std::string& v) { c.conj_cutoff = parse_int(v); }},
      {"oracle.r_max",
       [](RunConfig& c, const std::string& v) { c.oracle.r_max = parse_double(v); }},
      {"oracle.base_cells",
       [](RunConfig& c, const std::string& v) { c.oracle.base_cells = parse_int(v); }},
      {"oracle.refinements",
       [](RunConfig& c, const std::string& v) { c.oracle.refinements = parse_int(v); }},
      {"oracle.base_steps",
       [](RunConfig& c, const std::string& v) { c.oracle.base_steps = parse_int(v); }},
      {"oracle.ic_width",
       [](RunConfig& c, const std::string& v) { c.oracle.ic_width = parse_double(v); }},
      {"tolerances.mckean",
       [](RunConfig& c, const std::string& v) { c.tol_mckean = parse_double(v); }},
      {"tolerances.mehler",
       [](RunConfig& c, const std::string& v) { c.tol_mehler = parse_double(v); }},
      {"tolerances.oracle_order_min",
       [](RunConfig& c, const std::string& v) { c.oracle_order_min = parse_double(v); }},
      {"tolerances.rescale_limit",
       [](RunConfig& c, const std::string& v) { c.tol_rescale_limit = parse_double(v); }},
      {"tolerances.rescale_exponent_min",
       [](RunConfig& c, const std::string& v) {
         c.rescale_exponent_min = parse_double(v);
       }},
      {"tolerances.jlo_rel",
       [](RunConfig& c, const std::string& v) { c.tol_jlo_rel = parse_double(v); }},
      {"tolerances.rhs_integer",
       [](RunConfig& c, const std::string& v) { c.tol_rhs_integer = parse_double(v); }},
      {"tolerances.pairing_rel",
       [](RunConfig& c, const std::string& v) { c.tol_pairing_rel = parse_double(v); }},
      {"tolerances.conj_slope",
       [](RunConfig& c, const std::string& v) { c.conj_slope_tol = parse_double(v); }},
      {"tolerances.charclass",
       [](RunConfig& c, const std::string& v) { c.tol_charclass = parse_double(v); }},
      {"output.dir", [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "mckean-singer", "mehler", "rescale", "jlo-limit", "k-pairing", "charclass", "all"};
  return names;
}

void RunConfig::validate() const {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw ConfigError("unknown suite '" + suite + "'");
  for (double tol : {tol_mckean, tol_mehler, tol_rescale_limit, tol_jlo_rel,
                     tol_rhs_integer, tol_pairing_rel, tol_charclass})
    if (!(tol > 0.0)) throw ConfigError("tolerances must be positive");
  require_monotone(heat_t, "heat_t");
  require_monotone(mehler_t, "mehler_t");
  require_monotone(u_sweep, "u");
  require_monotone(jlo_t, "jlo_t");
  require_monotone(pairing_t, "pairing_t");
  require_monotone(conj_t, "conj_t");
  for (double u : u_sweep)
    if (!(u > 0.0 && u <= 1.0)) throw ConfigError("u sweep must lie in (0,1]");
  for (double t : jlo_t)
    if (!(t > 0.0)) throw ConfigError("jlo_t sweep must be positive");
  if (torus_cutoff < 2) throw ConfigError("torus_cutoff must be >= 2");
  if (bott_grid < 16) throw ConfigError("bott_grid must be >= 16");
  for (int k : flux_list)
    if (k == 0) throw ConfigError("flux_list entries must be nonzero");
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
  try {
    it->second(cfg, trim(value));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("bad value for '" + key + "': " + e.what());
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  bool saw_anything = false;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      saw_anything = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    apply_override(cfg, section + "." + key, value);
    saw_anything = true;
  }
  if (!saw_anything) throw ConfigError("empty config");
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << is.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace heatindex
