#include "dfkg/dfkg.h"

#include "config.hpp"
#include "runner.hpp"
#include "scenario.hpp"
#include "selftest.hpp"

#include <exception>
#include <iostream>
#include <memory>
#include <string>

struct dfkg_scenario {
  dfkg::Scenario scenario;
};

struct dfkg_report {
  std::string json;
  std::string path;
  bool all_completed = false;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

int fail_validation(const std::string& msg) {
  set_error(msg);
  return DFKG_ERR_VALIDATION;
}

}  // namespace

extern "C" {

const char* dfkg_version(void) { return "1.0.0"; }

const char* dfkg_last_error(void) { return g_last_error.c_str(); }

int dfkg_scenario_load(const char* path, dfkg_scenario** out) {
  if (!path || !out) return fail_validation("null argument");
  *out = nullptr;
  try {
    auto sc = std::make_unique<dfkg_scenario>();
    sc->scenario = dfkg::load_scenario(path);
    *out = sc.release();
    return DFKG_OK;
  } catch (const std::exception& e) {
    return fail_validation(e.what());
  }
}

int dfkg_scenario_parse(const char* text, const char* name,
                        dfkg_scenario** out) {
  if (!text || !out) return fail_validation("null argument");
  *out = nullptr;
  try {
    auto sc = std::make_unique<dfkg_scenario>();
    sc->scenario =
        dfkg::parse_scenario_text(text, name ? name : "scenario");
    *out = sc.release();
    return DFKG_OK;
  } catch (const std::exception& e) {
    return fail_validation(e.what());
  }
}

void dfkg_scenario_free(dfkg_scenario* sc) { delete sc; }

const char* dfkg_scenario_name(const dfkg_scenario* sc) {
  return sc ? sc->scenario.name.c_str() : "";
}

int dfkg_scenario_set_output_dir(dfkg_scenario* sc, const char* dir) {
  if (!sc || !dir || !*dir) return fail_validation("null or empty argument");
  sc->scenario.output_dir = dir;
  return DFKG_OK;
}

int dfkg_scenario_set_workers(dfkg_scenario* sc, int workers) {
  if (!sc) return fail_validation("null scenario");
  if (workers < 0) return fail_validation("workers must be >= 0");
  sc->scenario.workers = workers;
  return DFKG_OK;
}

int dfkg_scenario_restrict(dfkg_scenario* sc, const char* analysis) {
  if (!sc || !analysis) return fail_validation("null argument");
  const std::string name(analysis);
  dfkg::AnalysisKind kind;
  if (name == "simulate") kind = dfkg::AnalysisKind::Simulate;
  else if (name == "resolvent_sweep") kind = dfkg::AnalysisKind::ResolventSweep;
  else if (name == "annihilation") kind = dfkg::AnalysisKind::Annihilation;
  else if (name == "gcc_check") kind = dfkg::AnalysisKind::GccCheck;
  else if (name == "classify") kind = dfkg::AnalysisKind::Classify;
  else return fail_validation("unknown analysis '" + name + "'");
  sc->scenario.analyses = {kind};
  return DFKG_OK;
}

int dfkg_run(const dfkg_scenario* sc, dfkg_report** out) {
  if (!sc || !out) return fail_validation("null argument");
  *out = nullptr;
  try {
    const dfkg::RunReport run = dfkg::run_scenario(sc->scenario);
    auto rep = std::make_unique<dfkg_report>();
    rep->json = run.json;
    rep->path = run.report_path;
    rep->all_completed = run.all_completed;
    *out = rep.release();
    if (!run.all_completed) {
      set_error("one or more analyses failed; see the report");
      return DFKG_ERR_NUMERIC;
    }
    return DFKG_OK;
  } catch (const dfkg::ConfigError& e) {
    return fail_validation(e.what());
  } catch (const std::invalid_argument& e) {
    return fail_validation(e.what());
  } catch (const std::exception& e) {
    set_error(e.what());
    return DFKG_ERR_NUMERIC;
  }
}

void dfkg_report_free(dfkg_report* rep) { delete rep; }

const char* dfkg_report_json(const dfkg_report* rep) {
  return rep ? rep->json.c_str() : "";
}

const char* dfkg_report_path(const dfkg_report* rep) {
  return rep ? rep->path.c_str() : "";
}

int dfkg_report_all_completed(const dfkg_report* rep) {
  return rep && rep->all_completed ? 1 : 0;
}

int dfkg_selftest(int verbose) {
  try {
    return dfkg::run_selftest(std::cout, verbose != 0);
  } catch (const std::exception& e) {
    set_error(e.what());
    return 1;
  }
}

}  // extern "C"
