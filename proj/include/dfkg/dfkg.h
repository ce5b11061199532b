#ifndef DFKG_H
#define DFKG_H

/*
 * C API for the damped fractional Klein-Gordon laboratory.
 *
 * The library simulates u_tt + a(x) u_t + (1 - Lap)^{s/2} u = 0 on a
 * periodic box, measures resolvent and annihilation constants, runs the
 * geometric control checks and classifies the expected decay.
 *
 * All entry points are thread-safe with respect to distinct handles.
 * Functions returning int use the dfkg_status codes; on failure a
 * human-readable message is available from dfkg_last_error() (thread
 * local). Returned strings are owned by their handle and remain valid
 * until the handle is freed.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dfkg_status {
  DFKG_OK = 0,
  DFKG_ERR_VALIDATION = 1, /* config syntax/semantics, bad arguments */
  DFKG_ERR_NUMERIC = 2     /* an analysis failed while computing */
} dfkg_status;

/* Opaque handles. */
typedef struct dfkg_scenario dfkg_scenario;
typedef struct dfkg_report dfkg_report;

const char* dfkg_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* dfkg_last_error(void);

/* Scenario lifecycle ----------------------------------------------------- */

/* Parse and validate a scenario config file. */
int dfkg_scenario_load(const char* path, dfkg_scenario** out);

/* Parse and validate a scenario from config text; name labels outputs. */
int dfkg_scenario_parse(const char* text, const char* name,
                        dfkg_scenario** out);

void dfkg_scenario_free(dfkg_scenario* sc);

const char* dfkg_scenario_name(const dfkg_scenario* sc);

/* Override the output directory recorded in the config. */
int dfkg_scenario_set_output_dir(dfkg_scenario* sc, const char* dir);

/* Worker-count override (0 restores auto selection). */
int dfkg_scenario_set_workers(dfkg_scenario* sc, int workers);

/* Restrict execution to a single analysis kind: "simulate",
 * "resolvent_sweep", "annihilation", "gcc_check" or "classify". */
int dfkg_scenario_restrict(dfkg_scenario* sc, const char* analysis);

/* Execution --------------------------------------------------------------- */

/* Run the scenario's analyses; writes CSV/SVG/report.json under the output
 * directory. Returns DFKG_OK only when every requested analysis completed;
 * a report is still produced (when possible) on DFKG_ERR_NUMERIC. */
int dfkg_run(const dfkg_scenario* sc, dfkg_report** out);

void dfkg_report_free(dfkg_report* rep);

/* Serialized JSON report (owned by the report handle). */
const char* dfkg_report_json(const dfkg_report* rep);

/* Path of report.json on disk, empty if writing failed. */
const char* dfkg_report_path(const dfkg_report* rep);

/* 1 when every requested analysis completed. */
int dfkg_report_all_completed(const dfkg_report* rep);

/* Built-in oracle/property battery; prints one PASS/FAIL line per check to
 * stdout and returns the number of failures. */
int dfkg_selftest(int verbose);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DFKG_H */
