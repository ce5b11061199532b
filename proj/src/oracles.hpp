#pragma once

// Independent cross-check routes for the measured quantities. Everything
// here deliberately avoids the FFT/SVD code paths used by the library
// proper: transforms are naive DFT sums, singular values come from the
// normal-matrix eigenproblem, mode ODEs are integrated by RK4. Used by the
// test suites and the selftest battery only.

#include "grid.hpp"

#include <Eigen/Core>
#include <complex>
#include <utility>

namespace dfkg::oracle {

// Naive O(M^2) unitary DFT matrix in the library's plane-wave convention.
Eigen::MatrixXcd dft_matrix(const TorusGrid& grid);

// sqrt of the smallest eigenvalue of A^H A (self-adjoint route).
double sigma_min_normal(const Eigen::MatrixXcd& A);

// RK4 integration of w'' + a0 w' + sigma w = 0 as a 2x2 first-order system.
std::pair<Complex, Complex> mode_ode_rk4(double a0, double sigma, Complex u0,
                                         Complex v0, double t, int steps);

// Estimate of the sharp sum-form constant sup |f| / (|P1 f| + |P2 f|) by
// projected gradient descent over the unit sphere with restarts, seeded at
// the combined-form minimizer. The result is a certified lower bound on
// the sharp constant.
double sharp_sum_constant_estimate(const Eigen::MatrixXcd& P1,
                                   const Eigen::MatrixXcd& P2,
                                   const Eigen::VectorXcd& seed,
                                   int restarts = 12, int iters = 400);

// Radial membership scan of { |(|xi|^2+1)^{s/4} - lambda| < mu } on a fine
// 1-d grid of |xi| in [0, xi_max]; returns the first and last member.
struct RadialScan {
  bool any = false;
  double first = 0.0;
  double last = 0.0;
};
RadialScan scan_annulus(double lambda, double s, double mu, double xi_max,
                        int n);

// Per-mode smallest singular values for constant damping a0 (the weighted
// generator block-diagonalizes into 2x2 blocks per frequency).
double mode_sigma_min_full(double h, double a0, double lambda);
double mode_sigma_min_halfwave(double h, double a0, double lambda);

}  // namespace dfkg::oracle
