// Batch-run configuration: sectioned key=value text files plus programmatic
// overrides, with the validation the drivers rely on.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "heat.hpp"

namespace heatindex {

// Raised for malformed files, unknown keys, or invariant violations;
// drivers map it to the usage exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string suite = "all";

  // models
  std::vector<int> flux_list = {1, 2, 3};
  std::vector<int> charge_list = {-2, -1, 1, 2};
  int landau_levels = 48;
  int monopole_levels = 40;
  int torus_cutoff = 8;
  std::vector<int> pairing_cutoffs = {8, 12, 16};
  int bott_grid = 64;
  int quadrature_grid = 64;
  int fourier_support = 8;
  int degree_cap = 2;

  // sweeps
  std::vector<double> heat_t = {0.05, 0.2, 1.0};
  std::vector<double> mehler_b = {0.5, 1.0, 2.0};
  std::vector<double> mehler_t = {0.25, 0.5};
  std::vector<double> u_sweep = {1e-1, 3.162277660168379e-2, 1e-2,
                                 3.162277660168379e-3, 1e-3};
  std::vector<double> rescale_twists = {0.0, 1.0};
  std::vector<double> jlo_t = {0.032, 0.016, 0.008, 0.004, 0.002};
  std::vector<double> pairing_t = {0.02, 0.01, 0.005};
  std::vector<double> conj_t = {3.2e-4, 1.6e-4, 8e-5, 4e-5, 2e-5};
  int conj_cutoff = 6;

  OracleGrid oracle;

  // tolerances
  double tol_mckean = 1e-8;
  double tol_mehler = 1e-4;
  double oracle_order_min = 1.8;
  double tol_rescale_limit = 1e-6;
  double rescale_exponent_min = 0.5;
  double tol_jlo_rel = 0.01;
  double tol_rhs_integer = 1e-6;
  double tol_pairing_rel = 0.05;
  double conj_slope_tol = 0.3;
  double tol_charclass = 1e-8;

  std::string out_dir;  // empty: no files written

  void validate() const;  // throws ConfigError
};

const std::vector<std::string>& suite_names();

RunConfig load_config_file(const std::string& path);       // throws ConfigError
RunConfig parse_config_text(const std::string& text);      // throws ConfigError
// key is "section.name", e.g. "sweep.heat_t"; value uses the file syntax.
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace heatindex
