/* heatindex — numerical verification of heat-kernel index identities on
 * exactly solvable Dirac models.
 *
 * C interface to the shared library: opaque handles, status codes, and a
 * thread-local error message.  Every object returned through an out
 * parameter is owned by the caller and released with the matching _free.
 */
#ifndef HEATINDEX_H
#define HEATINDEX_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum heatindex_status {
  HEATINDEX_OK = 0,
  HEATINDEX_ERR_ARGUMENT = 1, /* bad argument / precondition violation */
  HEATINDEX_ERR_CONFIG = 2,   /* malformed or invalid configuration */
  HEATINDEX_ERR_RUNTIME = 3,  /* computation failed */
  HEATINDEX_ERR_IO = 4        /* file system failure */
} heatindex_status;

typedef struct heatindex_config heatindex_config;
typedef struct heatindex_report heatindex_report;
typedef struct heatindex_model heatindex_model;

const char* heatindex_version(void);

/* Message describing the most recent failure on this thread. */
const char* heatindex_last_error(void);

/* ---- configuration ---------------------------------------------------- */

heatindex_status heatindex_config_create(heatindex_config** out);
heatindex_status heatindex_config_load(const char* path, heatindex_config** out);
/* key is "section.name" using the config-file vocabulary, e.g.
 * "suite.name", "model.flux_list", "sweep.heat_t", "output.dir". */
heatindex_status heatindex_config_set(heatindex_config* cfg, const char* key,
                                      const char* value);
void heatindex_config_free(heatindex_config* cfg);

/* ---- suites ------------------------------------------------------------ */

int heatindex_suite_count(void);
const char* heatindex_suite_name(int idx);

heatindex_status heatindex_run_suite(const heatindex_config* cfg,
                                     heatindex_report** out);

/* ---- reports ----------------------------------------------------------- */

int heatindex_report_pass(const heatindex_report* report); /* 1 pass, 0 fail */
int heatindex_report_check_count(const heatindex_report* report);
/* Serialized JSON; free with heatindex_string_free. */
heatindex_status heatindex_report_json(const heatindex_report* report, char** out);
/* Writes report.json and the sweep CSVs into dir. */
heatindex_status heatindex_report_write(const heatindex_report* report,
                                        const char* dir);
void heatindex_report_free(heatindex_report* report);
void heatindex_string_free(char* s);

/* ---- direct model access ------------------------------------------------ */

heatindex_status heatindex_model_flat_torus(int mode_cutoff, heatindex_model** out);
heatindex_status heatindex_model_landau(int flux, int level_cutoff,
                                        heatindex_model** out);
heatindex_status heatindex_model_monopole(int charge, int angular_cutoff,
                                          heatindex_model** out);
/* McKean-Singer supertrace of exp(-t D^2) with its truncation tail bound. */
heatindex_status heatindex_model_heat_supertrace(const heatindex_model* model,
                                                 double t, double* value,
                                                 double* tail_bound);
heatindex_status heatindex_model_index(const heatindex_model* model, int* index);
heatindex_status heatindex_model_spectrum_csv(const heatindex_model* model,
                                              const char* path);
void heatindex_model_free(heatindex_model* model);

#ifdef __cplusplus
}
#endif

#endif /* HEATINDEX_H */
