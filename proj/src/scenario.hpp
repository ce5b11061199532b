#pragma once

#include "config.hpp"
#include "damping.hpp"
#include "evolution.hpp"
#include "geometry.hpp"
#include "resolvent.hpp"
#include "theory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dfkg {

enum class AnalysisKind { Simulate, ResolventSweep, Annihilation, GccCheck, Classify };

std::string to_string(AnalysisKind k);

struct SimulateParams {
  double T = 10.0;
  int samples = 101;
  EvolveMethod method = EvolveMethod::DenseExpm;
  double dt = 1e-3;
  bool smooth = false;
};

struct SweepParams {
  OperatorKind kind = OperatorKind::FullA;
  double lambda_max = 10.0;
  int points = 41;
  double mu = 0.5;
  double epsilon = 0.5;
};

struct AnnihilationParams {
  double lambda = 3.0;
  double mu = 0.5;
  double epsilon = 0.5;
};

struct GccParams {
  double epsilon = 0.5;
  double r = 1.0;
  double ell = 4.0;
  SamplingPlan plan;
};

struct ClassifyParams {
  double epsilon = 0.5;
  // structural-facts overrides; unset means derive from the damping spec
  std::optional<bool> uniformly_continuous;
  std::optional<bool> continuous;
  std::optional<bool> finite_measure_sublevel;
  std::optional<bool> periodic_superset;
};

struct Scenario {
  std::string name = "scenario";
  int d = 1;
  double L = 20.0;
  int N = 64;
  std::vector<double> s_values = {2.0};
  DampingSpec damping{Constant{1.0}};
  std::string damping_desc = "constant(1)";
  std::vector<AnalysisKind> analyses;
  SimulateParams simulate;
  SweepParams sweep;
  AnnihilationParams annihilation;
  GccParams gcc;
  ClassifyParams classify_params;
  std::uint64_t seed = 20240614;
  int workers = 0;  // 0 = auto (DFKG_WORKERS env, then hardware)
  std::string output_dir;

  TorusGrid grid() const { return TorusGrid(d, L, N); }
};

// Builds and fully validates a Scenario; unknown keys are hard errors with
// a nearest-key suggestion. Nothing is computed here.
Scenario scenario_from_config(const ConfigValue& root,
                              const std::string& default_name);
Scenario load_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text,
                             const std::string& name);

}  // namespace dfkg
