#pragma once

#include "scenario.hpp"

#include <string>
#include <vector>

namespace dfkg {

struct RunReport {
  std::string json;  // serialized versioned report
  bool all_completed = false;
  std::vector<std::string> files_written;
  std::string report_path;
};

// Executes the scenario's analyses, writes CSVs, SVG plots and report.json
// under the scenario's output directory. Module errors abort the affected
// analysis and are recorded; all_completed reflects the overall outcome.
RunReport run_scenario(const Scenario& scenario);

// Deterministic smooth random initial state with unit energy at order s.
StatePair initial_state(const TorusGrid& grid, double s, std::uint64_t seed);

}  // namespace dfkg
