#pragma once

#include "grid.hpp"

#include <vector>

namespace dfkg {

// (|xi|^2 + 1)^{s/4}, always >= 1.
double half_symbol(double s, double xi_sq);
double half_symbol(double s, const Point& xi);

// (|xi|^2 + 1)^{s/2} = half_symbol^2.
double full_symbol(double s, double xi_sq);
double full_symbol(double s, const Point& xi);

enum class AnnulusShape { Empty, Ball, Annulus };

// Frequency shell Sigma(lambda, s, mu) = { xi : |(|xi|^2+1)^{s/4} - lambda| < mu }
// together with its membership mask over the grid frequencies.
struct AnnulusSet {
  double lambda = 0.0;
  double s = 0.0;
  double mu = 0.0;
  AnnulusShape shape = AnnulusShape::Empty;
  double r_inner = 0.0;  // meaningful for Annulus
  double r_outer = 0.0;  // meaningful for Ball and Annulus
  TorusGrid grid;
  std::vector<char> mask;  // one entry per grid frequency
  Eigen::Index count = 0;  // number of modes in the mask
  bool outer_exceeds_grid = false;

  bool contains(double xi_sq) const;  // analytic membership test
};

AnnulusSet annulus(double lambda, double s, double mu, const TorusGrid& grid);

// Exact shell width r_outer - r_inner for lambda - mu >= 1.
double annulus_width(double lambda, double s, double mu);

// Translation construction for 0 < s < 2: finds (a, lambda) with
// a + B(0, r) contained in Sigma(lambda, s, mu). The shell is centered
// on the first axis.
struct AnnulusTranslation {
  Point a{0.0, 0.0};
  double lambda = 0.0;
  double r_inner = 0.0;
  double r_outer = 0.0;
};

AnnulusTranslation annulus_translation(double s, double mu, double r);

}  // namespace dfkg
