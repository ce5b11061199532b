#include "ratefit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace dfkg {

namespace {

struct Window {
  size_t lo = 0;
  size_t hi = 0;  // exclusive
};

// Default tail window: last half of the trajectory, at least 16 samples
// when available. Early times carry transient prefactors.
Window tail_window(const Trajectory& traj) {
  const size_t n = traj.times.size();
  size_t lo = n / 2;
  if (n - lo < 16) lo = n > 16 ? n - 16 : 0;
  if (n - lo < 8)
    throw std::invalid_argument("ratefit: window too short (need >= 8 samples)");
  return Window{lo, n};
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit fit;
  fit.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  fit.intercept = (sy - fit.slope * sx) / n;
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    acc += r * r;
  }
  fit.rms = std::sqrt(acc / n);
  return fit;
}

FitReport fit_on_axis(const Trajectory& traj, const std::string& model,
                      double (*axis)(double)) {
  const Window w = tail_window(traj);
  std::vector<double> xs, ys;
  xs.reserve(w.hi - w.lo);
  ys.reserve(w.hi - w.lo);
  for (size_t i = w.lo; i < w.hi; ++i) {
    if (!(traj.energies[i] > 0.0))
      throw std::invalid_argument(
          "ratefit: nonpositive energy in the fit window");
    xs.push_back(axis(traj.times[i]));
    ys.push_back(std::log(traj.energies[i]));
  }
  const LineFit fit = least_squares(xs, ys);

  FitReport rep;
  rep.model = model;
  rep.energy_slope = fit.slope;
  rep.prefactor = std::exp(fit.intercept);
  rep.residual = fit.rms;
  rep.t_lo = traj.times[w.lo];
  rep.t_hi = traj.times[w.hi - 1];
  rep.rate = -fit.slope / 2.0;
  rep.no_decay = fit.slope > -1e-12;
  if (rep.no_decay) rep.rate = 0.0;
  return rep;
}

}  // namespace

FitReport fit_exponential(const Trajectory& traj) {
  FitReport rep = fit_on_axis(traj, "exponential", [](double t) { return t; });
  rep.conversion_note =
      "energy ~ exp(slope * t); semigroup omega = -slope/2";
  return rep;
}

FitReport fit_polynomial(const Trajectory& traj) {
  FitReport rep = fit_on_axis(traj, "polynomial",
                              [](double t) { return std::log1p(t); });
  rep.conversion_note =
      "energy ~ (1+t)^slope; semigroup exponent 1/p = -slope/2";
  return rep;
}

FitReport fit_logarithmic(const Trajectory& traj) {
  FitReport rep = fit_on_axis(traj, "logarithmic", [](double t) {
    return std::log(std::log(std::numbers::e + t));
  });
  rep.conversion_note =
      "energy ~ log(e+t)^slope; semigroup exponent 1/p = -slope/2";
  return rep;
}

FitReport select_model(const Trajectory& traj) {
  const FitReport fe = fit_exponential(traj);
  const FitReport fp = fit_polynomial(traj);
  const FitReport fl = fit_logarithmic(traj);

  // No decaying family fits a flat curve; report that honestly.
  const double first = traj.energies.empty() ? 0.0 : traj.energies.front();
  const double last = traj.energies.empty() ? 0.0 : traj.energies.back();
  if (fe.no_decay || (first > 0.0 && last > 0.99 * first)) {
    FitReport rep = fe;
    rep.model = "none";
    rep.no_decay = true;
    rep.rate = 0.0;
    rep.conversion_note = "no decay detected on the fit window";
    return rep;
  }

  // Weakest-first order so that ties resolve toward the weaker class.
  const FitReport* ordered[3] = {&fl, &fp, &fe};
  const FitReport* best = ordered[0];
  for (const FitReport* cand : ordered)
    if (cand->residual < best->residual) best = cand;

  FitReport rep = *best;
  for (const FitReport* cand : ordered) {
    if (cand == best) break;
    if (cand->residual <= best->residual * 1.10) {
      rep = *cand;  // weaker class within 10% of the best residual
      rep.tie_break = true;
      break;
    }
  }
  return rep;
}

}  // namespace dfkg
