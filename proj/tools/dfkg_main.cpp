// Command line front end. Talks to the engine exclusively through the C
// API in dfkg/dfkg.h, the same surface other language bindings would use.

#include <dfkg/dfkg.h>

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>

namespace {

struct ScenarioDeleter {
  void operator()(dfkg_scenario* sc) const { dfkg_scenario_free(sc); }
};
struct ReportDeleter {
  void operator()(dfkg_report* rep) const { dfkg_report_free(rep); }
};

using ScenarioPtr = std::unique_ptr<dfkg_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<dfkg_report, ReportDeleter>;

int run_config(const std::string& config, const std::string& restrict_to,
               const std::string& output_dir, int workers, bool print_report) {
  dfkg_scenario* raw = nullptr;
  if (int rc = dfkg_scenario_load(config.c_str(), &raw); rc != DFKG_OK) {
    std::fprintf(stderr, "error: %s\n", dfkg_last_error());
    return rc;
  }
  ScenarioPtr sc(raw);

  if (!restrict_to.empty()) {
    if (int rc = dfkg_scenario_restrict(sc.get(), restrict_to.c_str());
        rc != DFKG_OK) {
      std::fprintf(stderr, "error: %s\n", dfkg_last_error());
      return rc;
    }
  }
  if (!output_dir.empty()) {
    if (int rc = dfkg_scenario_set_output_dir(sc.get(), output_dir.c_str());
        rc != DFKG_OK) {
      std::fprintf(stderr, "error: %s\n", dfkg_last_error());
      return rc;
    }
  }
  if (workers >= 0) {
    if (int rc = dfkg_scenario_set_workers(sc.get(), workers);
        rc != DFKG_OK) {
      std::fprintf(stderr, "error: %s\n", dfkg_last_error());
      return rc;
    }
  }

  dfkg_report* rep_raw = nullptr;
  const int rc = dfkg_run(sc.get(), &rep_raw);
  ReportPtr rep(rep_raw);
  if (!rep) {
    std::fprintf(stderr, "error: %s\n", dfkg_last_error());
    return rc == DFKG_OK ? DFKG_ERR_NUMERIC : rc;
  }
  if (print_report) {
    std::fputs(dfkg_report_json(rep.get()), stdout);
  } else {
    std::printf("scenario '%s': report written to %s\n",
                dfkg_scenario_name(sc.get()), dfkg_report_path(rep.get()));
  }
  if (rc != DFKG_OK)
    std::fprintf(stderr, "error: %s\n", dfkg_last_error());
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dfkg-lab: fractional damped Klein-Gordon laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dfkg_version()));

  std::string config;
  std::string output_dir;
  int workers = -1;
  bool print_report = false;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("config", config, "scenario config file")
          ->required()
          ->check(CLI::ExistingFile);
    cmd->add_option("-o,--output-dir", output_dir,
                    "override the output directory");
    cmd->add_option("-w,--workers", workers,
                    "worker threads (0 = auto, also DFKG_WORKERS)");
    cmd->add_flag("--print-report", print_report,
                  "dump report JSON to stdout");
  };

  CLI::App* run = app.add_subcommand("run", "run the scenario's analyses");
  add_common(run, true);
  CLI::App* classify =
      app.add_subcommand("classify", "stability classification only");
  add_common(classify, true);
  CLI::App* sweep =
      app.add_subcommand("sweep", "resolvent-constant sweep only");
  add_common(sweep, true);
  CLI::App* gcc =
      app.add_subcommand("gcc", "geometric control checks only");
  add_common(gcc, true);

  bool verbose = false;
  CLI::App* selftest =
      app.add_subcommand("selftest", "run the oracle/property battery");
  selftest->add_flag("-v,--verbose", verbose, "flush after each check");

  CLI11_PARSE(app, argc, argv);

  if (selftest->parsed())
    return dfkg_selftest(verbose ? 1 : 0) == 0 ? 0 : DFKG_ERR_NUMERIC;
  if (run->parsed())
    return run_config(config, "", output_dir, workers, print_report);
  if (classify->parsed())
    return run_config(config, "classify", output_dir, workers, print_report);
  if (sweep->parsed())
    return run_config(config, "resolvent_sweep", output_dir, workers,
                      print_report);
  if (gcc->parsed())
    return run_config(config, "gcc_check", output_dir, workers, print_report);
  return 0;
}
