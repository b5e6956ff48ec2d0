// Batch driver over the shared-library C API.
//
//   heatindex run --config <path> [--suite NAME] [--out DIR]
//   heatindex list-suites
//
// Exit code: 0 all checks pass, 1 a check failed, 2 usage/config error.
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "heatindex.h"

namespace {

struct ConfigDeleter {
  void operator()(heatindex_config* c) const { heatindex_config_free(c); }
};
struct ReportDeleter {
  void operator()(heatindex_report* r) const { heatindex_report_free(r); }
};

int run_command(const std::string& config_path, const std::string& suite,
                const std::string& out_dir) {
  heatindex_config* raw = nullptr;
  if (heatindex_config_load(config_path.c_str(), &raw) != HEATINDEX_OK) {
    std::fprintf(stderr, "heatindex: %s\n", heatindex_last_error());
    return 2;
  }
  std::unique_ptr<heatindex_config, ConfigDeleter> cfg(raw);
  if (!suite.empty() &&
      heatindex_config_set(cfg.get(), "suite.name", suite.c_str()) != HEATINDEX_OK) {
    std::fprintf(stderr, "heatindex: %s\n", heatindex_last_error());
    return 2;
  }
  if (!out_dir.empty() &&
      heatindex_config_set(cfg.get(), "output.dir", out_dir.c_str()) != HEATINDEX_OK) {
    std::fprintf(stderr, "heatindex: %s\n", heatindex_last_error());
    return 2;
  }

  heatindex_report* raw_report = nullptr;
  heatindex_status status = heatindex_run_suite(cfg.get(), &raw_report);
  if (status == HEATINDEX_ERR_CONFIG || status == HEATINDEX_ERR_ARGUMENT) {
    std::fprintf(stderr, "heatindex: %s\n", heatindex_last_error());
    return 2;
  }
  if (status != HEATINDEX_OK) {
    std::fprintf(stderr, "heatindex: %s\n", heatindex_last_error());
    return 1;
  }
  std::unique_ptr<heatindex_report, ReportDeleter> report(raw_report);

  char* json = nullptr;
  if (heatindex_report_json(report.get(), &json) == HEATINDEX_OK) {
    std::fputs(json, stdout);
    std::fputc('\n', stdout);
    heatindex_string_free(json);
  }
  int pass = heatindex_report_pass(report.get());
  std::fprintf(stderr, "heatindex: %d checks, %s\n",
               heatindex_report_check_count(report.get()), pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of heat-kernel index identities"};
  app.require_subcommand(1);

  std::string config_path, suite, out_dir;
  CLI::App* run = app.add_subcommand("run", "execute a verification suite");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--suite", suite, "override the configured suite");
  run->add_option("--out", out_dir, "output directory for report.json and CSV tables");

  CLI::App* list = app.add_subcommand("list-suites", "print the available suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    for (int i = 0; i < heatindex_suite_count(); ++i)
      std::printf("%s\n", heatindex_suite_name(i));
    return 0;
  }
  return run_command(config_path, suite, out_dir);
}
