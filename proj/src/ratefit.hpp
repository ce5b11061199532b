#pragma once

#include "evolution.hpp"

#include <string>

namespace dfkg {

// Regression of a measured energy curve onto one decay family, on the axes
// that linearize it. `rate` is always the semigroup-level exponent (omega,
// or 1/p); the observed energy exponent is twice that, which is what
// `energy_slope` records.
struct FitReport {
  std::string model;          // exponential | polynomial | logarithmic | none
  double rate = 0.0;          // semigroup exponent
  double energy_slope = 0.0;  // slope on the transformed axes
  double prefactor = 0.0;     // exp(intercept)
  double residual = 0.0;      // RMS residual on the transformed axes
  double t_lo = 0.0;
  double t_hi = 0.0;
  bool tie_break = false;
  bool no_decay = false;
  std::string conversion_note;
};

FitReport fit_exponential(const Trajectory& traj);
FitReport fit_polynomial(const Trajectory& traj);
FitReport fit_logarithmic(const Trajectory& traj);

// Smallest-residual family; ties within 10% resolve toward the weaker
// class (logarithmic < polynomial < exponential) and are flagged.
FitReport select_model(const Trajectory& traj);

}  // namespace dfkg
