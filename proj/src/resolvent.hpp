#pragma once

#include "damping.hpp"
#include "evolution.hpp"
#include "symbols.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace dfkg {

enum class OperatorKind { FullA, Halfwave, OneSided, TwoSided };
enum class SigmaMethod { Auto, DenseSvd, Iterative };

std::string to_string(OperatorKind k);

// Sharp constant of an inequality |f| <= C |L f| on the discrete space:
// C = 1/sigma_min(L). All right-hand sides are l2-combined; the sharp
// sum-form constant of the corresponding two-term inequality lies in
// [combined/sqrt(2), combined].
struct ResolventPoint {
  double lambda = 0.0;
  double sigma_min = 0.0;
  double constant = 0.0;  // 1/sigma_min, +inf when sigma_min == 0
  OperatorKind op = OperatorKind::FullA;
  SigmaMethod method = SigmaMethod::DenseSvd;  // method actually used
  bool converged = true;
  double residual = 0.0;
  bool empty_sigma = false;  // one/two-sided with no grid mode in Sigma
  double sum_lo = 0.0;       // enclosure of the sharp sum-form constant
  double sum_hi = 0.0;
};

struct AnnihilationResult {
  std::vector<char> s_mask;
  std::vector<char> sigma_mask;
  double sigma_min = 0.0;
  double combined_constant = 0.0;
  double sum_lo = 0.0;  // sharp sum-form constant enclosure
  double sum_hi = 0.0;
  SigmaMethod method = SigmaMethod::DenseSvd;
  bool empty_sigma = false;
};

struct SweepResult {
  std::vector<ResolventPoint> points;
  double sup_constant = 0.0;
  double argmax_lambda = 0.0;
  bool tail_checked = false;   // sweep reached beyond the Nyquist symbol
  bool tail_monotone = false;  // constants monotone on that tail
};

// sigma_min of W(A - i lambda)W^{-1}.
ResolventPoint resolvent_constant_full(const Generator& gen, double lambda,
                                       SigmaMethod method = SigmaMethod::Auto);

// sigma_min of f -> ((H^{s/4} - lambda) f, sqrt(a) f), stacked.
ResolventPoint halfwave_constant(const Generator& gen, double lambda,
                                 SigmaMethod method = SigmaMethod::Auto);

// Restriction of B to the Sigma-mode subspace. B is multiplication by
// sqrt(a) (generator overload) or by the indicator of S^c (mask overload).
ResolventPoint annihilation_one_sided(const Generator& gen,
                                      const AnnulusSet& sigma);
ResolventPoint annihilation_one_sided(const SublevelMask& s_mask,
                                      const AnnulusSet& sigma);

// Stacked f -> ((I - Pi_Sigma) F f, 1_{S^c} f).
AnnihilationResult annihilation_two_sided(const SublevelMask& s_mask,
                                          const AnnulusSet& sigma);

struct SweepSpec {
  OperatorKind kind = OperatorKind::FullA;
  double s = 2.0;
  DampingSpec damping;
  double mu = 0.5;       // Sigma half-width for one/two-sided
  double epsilon = 0.5;  // sublevel threshold for two-sided
};

// Constants on a uniform lambda grid in [0, lambda_max]. Points run in
// parallel; empty-Sigma points are flagged and excluded from the sup.
SweepResult lambda_sweep(const TorusGrid& grid, const SweepSpec& spec,
                         double lambda_max, int n_points, int workers = 0);

// Smallest singular value helpers. The iterative path runs inverse power
// iteration on the normal operator with CG inner solves; non-convergence is
// reported, never silently rounded.
double sigma_min_dense(const Eigen::MatrixXcd& A);

struct IterativeResult {
  double sigma = 0.0;
  bool converged = false;
  double residual = 0.0;
  int iterations = 0;
};

using ApplyFn = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

IterativeResult sigma_min_iterative(const ApplyFn& apply_op,
                                    const ApplyFn& apply_adjoint,
                                    Eigen::Index dim, double tol = 1e-10,
                                    int max_outer = 60, int cg_max = 5000);

// Assembled operators (frequency basis for FullA/Halfwave inputs, space
// basis for the annihilation operators); used by the dense paths and
// available to the tests.
Eigen::MatrixXcd assemble_halfwave(const Generator& gen, double lambda);
Eigen::MatrixXcd assemble_one_sided(const Generator& gen,
                                    const AnnulusSet& sigma);
Eigen::MatrixXcd assemble_one_sided(const SublevelMask& s_mask,
                                    const AnnulusSet& sigma);
Eigen::MatrixXcd assemble_two_sided(const SublevelMask& s_mask,
                                    const AnnulusSet& sigma);

}  // namespace dfkg
