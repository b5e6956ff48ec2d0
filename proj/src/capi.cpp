// extern-C surface of the shared library; exceptions are caught here and
// mapped to status codes with a thread-local message.
#include "heatindex.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "config.hpp"
#include "heat.hpp"
#include "models.hpp"
#include "report.hpp"
#include "suites.hpp"

struct heatindex_config {
  heatindex::RunConfig cfg;
};

struct heatindex_report {
  heatindex::VerificationReport report;
};

struct heatindex_model {
  heatindex::SpectralModel model;
};

namespace {

thread_local std::string g_last_error;

heatindex_status fail(heatindex_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
heatindex_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const heatindex::ConfigError& e) {
    return fail(HEATINDEX_ERR_CONFIG, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HEATINDEX_ERR_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(HEATINDEX_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HEATINDEX_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(HEATINDEX_ERR_RUNTIME, e.what());
  }
}

}  // namespace

extern "C" {

const char* heatindex_version(void) { return "1.0.0"; }

const char* heatindex_last_error(void) { return g_last_error.c_str(); }

heatindex_status heatindex_config_create(heatindex_config** out) {
  if (!out) return fail(HEATINDEX_ERR_ARGUMENT, "null out parameter");
  return guarded([&] {
    *out = new heatindex_config{};
    return HEATINDEX_OK;
  });
}

heatindex_status heatindex_config_load(const char* path, heatindex_config** out) {
  if (!path || !out) return fail(HEATINDEX_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto cfg = heatindex::load_config_file(path);
    *out = new heatindex_config{std::move(cfg)};
    return HEATINDEX_OK;
  });
}

heatindex_status heatindex_config_set(heatindex_config* cfg, const char* key,
                                      const char* value) {
  if (!cfg || !key || !value) return fail(HEATINDEX_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    heatindex::apply_override(cfg->cfg, key, value);
    return HEATINDEX_OK;
  });
}

void heatindex_config_free(heatindex_config* cfg) { delete cfg; }

int heatindex_suite_count(void) {
  return static_cast<int>(heatindex::suite_names().size());
}

const char* heatindex_suite_name(int idx) {
  const auto& names = heatindex::suite_names();
  if (idx < 0 || idx >= static_cast<int>(names.size())) return nullptr;
  return names[static_cast<std::size_t>(idx)].c_str();
}

heatindex_status heatindex_run_suite(const heatindex_config* cfg,
                                     heatindex_report** out) {
  if (!cfg || !out) return fail(HEATINDEX_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto report = heatindex::run_suite(cfg->cfg);
    *out = new heatindex_report{std::move(report)};
    return HEATINDEX_OK;
  });
}

int heatindex_report_pass(const heatindex_report* report) {
  return report && report->report.overall_pass() ? 1 : 0;
}

int heatindex_report_check_count(const heatindex_report* report) {
  return report ? static_cast<int>(report->report.checks.size()) : 0;
}

heatindex_status heatindex_report_json(const heatindex_report* report, char** out) {
  if (!report || !out) return fail(HEATINDEX_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::string json = report->report.to_json();
    char* buf = new char[json.size() + 1];
    std::memcpy(buf, json.c_str(), json.size() + 1);
    *out = buf;
    return HEATINDEX_OK;
  });
}

heatindex_status heatindex_report_write(const heatindex_report* report,
                                        const char* dir) {
  if (!report || !dir) return fail(HEATINDEX_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    try {
      report->report.write(dir);
    } catch (const std::runtime_error& e) {
      return fail(HEATINDEX_ERR_IO, e.what());
    }
    return HEATINDEX_OK;
  });
}

void heatindex_report_free(heatindex_report* report) { delete report; }

void heatindex_string_free(char* s) { delete[] s; }

heatindex_status heatindex_model_flat_torus(int mode_cutoff, heatindex_model** out) {
  if (!out) return fail(HEATINDEX_ERR_ARGUMENT, "null out parameter");
  return guarded([&] {
    *out = new heatindex_model{heatindex::flat_torus_dirac(mode_cutoff)};
    return HEATINDEX_OK;
  });
}

heatindex_status heatindex_model_landau(int flux, int level_cutoff,
                                        heatindex_model** out) {
  if (!out) return fail(HEATINDEX_ERR_ARGUMENT, "null out parameter");
  return guarded([&] {
    *out = new heatindex_model{heatindex::landau_model(flux, level_cutoff)};
    return HEATINDEX_OK;
  });
}

heatindex_status heatindex_model_monopole(int charge, int angular_cutoff,
                                          heatindex_model** out) {
  if (!out) return fail(HEATINDEX_ERR_ARGUMENT, "null out parameter");
  return guarded([&] {
    *out = new heatindex_model{heatindex::monopole_model(charge, angular_cutoff)};
    return HEATINDEX_OK;
  });
}

heatindex_status heatindex_model_heat_supertrace(const heatindex_model* model,
                                                 double t, double* value,
                                                 double* tail_bound) {
  if (!model || !value) return fail(HEATINDEX_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto st = heatindex::heat_supertrace(model->model, t);
    *value = st.value;
    if (tail_bound) *tail_bound = st.tail_bound;
    return HEATINDEX_OK;
  });
}

heatindex_status heatindex_model_index(const heatindex_model* model, int* index) {
  if (!model || !index) return fail(HEATINDEX_ERR_ARGUMENT, "null argument");
  *index = model->model.zero_mode_index();
  return HEATINDEX_OK;
}

heatindex_status heatindex_model_spectrum_csv(const heatindex_model* model,
                                              const char* path) {
  if (!model || !path) return fail(HEATINDEX_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::ofstream os(path);
    if (!os) return fail(HEATINDEX_ERR_IO, std::string("cannot open ") + path);
    model->model.write_spectrum_csv(os);
    if (!os) return fail(HEATINDEX_ERR_IO, std::string("write failed on ") + path);
    return HEATINDEX_OK;
  });
}

void heatindex_model_free(heatindex_model* model) { delete model; }

}  // extern "C"
