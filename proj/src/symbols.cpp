#include "symbols.hpp"

#include <cmath>
#include <stdexcept>

namespace dfkg {

double half_symbol(double s, double xi_sq) {
  if (!(s > 0.0)) throw std::invalid_argument("half_symbol: s must be > 0");
  return std::pow(xi_sq + 1.0, s / 4.0);
}

double half_symbol(double s, const Point& xi) {
  return half_symbol(s, xi[0] * xi[0] + xi[1] * xi[1]);
}

double full_symbol(double s, double xi_sq) {
  if (!(s > 0.0)) throw std::invalid_argument("full_symbol: s must be > 0");
  return std::pow(xi_sq + 1.0, s / 2.0);
}

double full_symbol(double s, const Point& xi) {
  return full_symbol(s, xi[0] * xi[0] + xi[1] * xi[1]);
}

bool AnnulusSet::contains(double xi_sq) const {
  return std::abs(half_symbol(s, xi_sq) - lambda) < mu;
}

double annulus_width(double lambda, double s, double mu) {
  const double ro = std::sqrt(std::pow(lambda + mu, 4.0 / s) - 1.0);
  const double ri = std::sqrt(std::pow(lambda - mu, 4.0 / s) - 1.0);
  return ro - ri;
}

AnnulusSet annulus(double lambda, double s, double mu, const TorusGrid& grid) {
  if (!(s > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("annulus: s and mu must be > 0");
  if (lambda < 0.0)
    throw std::invalid_argument("annulus: lambda must be >= 0 (canonical form)");

  AnnulusSet set;
  set.lambda = lambda;
  set.s = s;
  set.mu = mu;
  set.grid = grid;

  if (lambda + mu <= 1.0) {
    set.shape = AnnulusShape::Empty;
  } else if (lambda - mu < 1.0) {
    set.shape = AnnulusShape::Ball;
    set.r_outer = std::sqrt(std::pow(lambda + mu, 4.0 / s) - 1.0);
  } else {
    set.shape = AnnulusShape::Annulus;
    set.r_inner = std::sqrt(std::pow(lambda - mu, 4.0 / s) - 1.0);
    set.r_outer = std::sqrt(std::pow(lambda + mu, 4.0 / s) - 1.0);
  }

  set.outer_exceeds_grid = set.r_outer > grid.max_freq_norm();

  set.mask.assign(grid.size(), 0);
  set.count = 0;
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const double q = grid.freq_sq(k);
    const bool member = set.contains(q);
    // Cross-check the direct test against the shape classification.
    bool by_shape = false;
    switch (set.shape) {
      case AnnulusShape::Empty:
        by_shape = false;
        break;
      case AnnulusShape::Ball:
        by_shape = q < set.r_outer * set.r_outer;
        break;
      case AnnulusShape::Annulus:
        by_shape = q > set.r_inner * set.r_inner && q < set.r_outer * set.r_outer;
        break;
    }
    if (member != by_shape) {
      // Disagreement is only tolerable on the shell boundary, where the two
      // routes may round differently.
      const double gap = std::abs(std::abs(half_symbol(s, q) - lambda) - mu);
      if (gap > 1e-9 * (1.0 + mu))
        throw std::logic_error("annulus: mask/shape cross-check failed");
    }
    if (member) {
      set.mask[k] = 1;
      ++set.count;
    }
  }
  return set;
}

AnnulusTranslation annulus_translation(double s, double mu, double r) {
  if (!(s > 0.0 && s < 2.0))
    throw std::invalid_argument("annulus_translation: requires 0 < s < 2");
  if (!(mu > 0.0) || !(r > 0.0))
    throw std::invalid_argument("annulus_translation: mu, r must be > 0");

  // The shell width is unbounded in lambda when s < 2, so doubling
  // terminates. The small factor keeps the ball strictly inside.
  double lambda = 2.0 + mu;
  while (annulus_width(lambda, s, mu) < 2.0 * r * 1.0001) lambda *= 2.0;

  AnnulusTranslation t;
  t.lambda = lambda;
  t.r_inner = std::sqrt(std::pow(lambda - mu, 4.0 / s) - 1.0);
  t.r_outer = std::sqrt(std::pow(lambda + mu, 4.0 / s) - 1.0);
  t.a = Point{(t.r_inner + t.r_outer) / 2.0, 0.0};
  return t;
}

}  // namespace dfkg
