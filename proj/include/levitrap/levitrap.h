/* levitrap C API: analysis of optically levitated nanoparticles -- trap
 * coefficients, gas/thermal state, shot-noise heating, critical ambient
 * pressure, measurement noise and feedback-cooling figures.
 *
 * All functions return lvt_status; every out-parameter is written only on
 * LVT_OK unless noted. Strings returned through char** out-parameters are
 * heap-allocated and must be released with lvt_string_free. Handles are
 * opaque and must be released with their matching *_free function.
 */
#ifndef LEVITRAP_H
#define LEVITRAP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lvt_scenario lvt_scenario;
typedef struct lvt_report lvt_report;

typedef enum lvt_status {
  LVT_OK = 0,
  LVT_ERR_INVALID_ARGUMENT = 1,
  LVT_ERR_PARSE = 2,       /* malformed config, unknown key/unit/parameter */
  LVT_ERR_VALIDATION = 3,  /* a scenario invariant does not hold */
  LVT_ERR_UNSTABLE = 4,    /* no steady state (critical damping or gain) */
  LVT_ERR_NO_CONVERGENCE = 5,
  LVT_ERR_UNDERSAMPLED = 6, /* stochastic run too short for the statistics */
  LVT_ERR_IO = 7,
  LVT_ERR_INTERNAL = 8
} lvt_status;

const char* lvt_version(void);

/* Scenario construction. error_message (optional) receives a description
 * on failure. */
lvt_status lvt_scenario_from_json(const char* json_text, lvt_scenario** out,
                                  char** error_message);
lvt_status lvt_scenario_from_file(const char* path, lvt_scenario** out,
                                  char** error_message);
/* Built-in cases: 70nm, 180nm, 70nm-parametric, 180nm-parametric,
 * 70nm-hybrid-k1, 70nm-hybrid-k3, 180nm-hybrid-k1, 180nm-hybrid-k3. */
lvt_status lvt_scenario_builtin(const char* name, lvt_scenario** out,
                                char** error_message);
void lvt_scenario_free(lvt_scenario* scenario);

/* Full pipeline evaluation. strict != 0 turns failed operating conditions
 * into validation errors. */
lvt_status lvt_report_compute(const lvt_scenario* scenario, int strict, lvt_report** out,
                              char** error_message);
/* format: "json" or "csv". */
lvt_status lvt_report_render(const lvt_report* report, const char* format,
                             char** out_text);
/* Scalar lookup by dotted path into the report document, e.g.
 * "rates.gamma_cr" or "optics.omega_1". */
lvt_status lvt_report_scalar(const lvt_report* report, const char* key, double* out);
void lvt_report_free(lvt_report* report);

/* Parameter sweep; spec strings look like "mean_power=0.05:0.2:4[:log]".
 * spec2 may be NULL. threads <= 0 uses LEVITRAP_THREADS / hardware. */
lvt_status lvt_sweep_csv(const lvt_scenario* scenario, const char* spec1,
                         const char* spec2, int threads, char** out_csv,
                         char** error_message);

/* Stochastic oracle suites. which: "psd", "ladder" or "all". duration <= 0
 * picks ~4e6 expected scatter events. dump_path (optional) writes the raw
 * photon stream dump. format: "text" or "json". all_pass receives 1/0. */
lvt_status lvt_oracle_run(const lvt_scenario* scenario, const char* which,
                          uint64_t seed, double duration, const char* dump_path,
                          const char* format, char** out_text, int* all_pass,
                          char** error_message);

/* Regression against the built-in reference values. case_name: "70nm",
 * "180nm" or "all". format: "table", "json" or "csv". tier1_pass
 * receives 1/0. */
lvt_status lvt_regression_run(const char* case_name, const char* format,
                              char** out_text, int* tier1_pass, char** error_message);

void lvt_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LEVITRAP_H */
