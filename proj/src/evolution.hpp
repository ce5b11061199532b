#pragma once

#include "damping.hpp"
#include "grid.hpp"
#include "symbols.hpp"

#include <memory>
#include <string>
#include <vector>

namespace dfkg {

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StatePair {
  SpectralField u;
  SpectralField v;
};

// Block operator A(s,a): (f1, f2) -> (f2, -(1-Lap)^{s/2} f1 - a f2) on the
// grid, together with the H^{s/2} x L^2 weighting. Weighted coordinates are
// the stacked frequency vector z = (h .* u_hat, v_hat) with h the half
// symbol; the energy is |z|^2 and the weighted generator acts on z.
class Generator {
 public:
  Generator(const TorusGrid& grid, double s, DampingSpec damping,
            Eigen::Index dense_cap = 4096);

  const TorusGrid& grid() const { return grid_; }
  double s() const { return s_; }
  const DampingSpec& damping() const { return damping_; }
  const Eigen::VectorXd& damping_samples() const { return a_; }
  const Eigen::VectorXd& sqrt_damping() const { return sqrt_a_; }
  double damping_sup() const { return a_sup_; }  // max over nodes
  const Eigen::VectorXd& half_symbols() const { return h_; }
  Eigen::Index dense_cap() const { return dense_cap_; }
  bool dense_available() const { return 2 * grid_.size() <= dense_cap_; }

  // Unweighted block action and its explicit inverse. Results are returned
  // in frequency representation.
  StatePair apply(const StatePair& f) const;
  StatePair apply_inverse(const StatePair& g) const;

  // Weighted stacked coordinates.
  Eigen::VectorXcd to_weighted(const StatePair& f) const;
  StatePair from_weighted(const Eigen::VectorXcd& z) const;
  Eigen::VectorXcd apply_weighted(const Eigen::VectorXcd& z,
                                  double lambda) const;  // W(A - i lambda)W^-1

  // Dense realization of W(A - i lambda)W^-1 in the frequency basis.
  // Requires dense_available().
  Eigen::MatrixXcd dense_weighted(double lambda) const;

 private:
  TorusGrid grid_;
  double s_;
  DampingSpec damping_;
  Eigen::Index dense_cap_;
  Eigen::VectorXd a_, sqrt_a_, h_;
  double a_sup_ = 0.0;
};

// Squared H^{s/2} x L^2 norm, computed spectrally.
double energy(const StatePair& state, double s);

// Instantaneous dissipation 2 * sum_k a_k |v_k|^2.
double dissipation_rate(const Generator& gen, const StatePair& state);

enum class EvolveMethod { DenseExpm, StrangSplit };

struct EvolveOptions {
  EvolveMethod method = EvolveMethod::DenseExpm;
  double dt = 1e-3;  // target step for StrangSplit
  bool store_states = false;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> energies;
  std::vector<StatePair> states;  // filled when store_states
  std::string method_tag;
  double dt = 0.0;  // realized step (StrangSplit)
  bool smooth_probe = false;
};

Trajectory evolve(const Generator& gen, const StatePair& state0,
                  const std::vector<double>& times, const EvolveOptions& opt);

// Per-mode exact solution for a(x) = a0: each Fourier mode solves
// w'' + a0 w' + (|xi|^2+1)^{s/2} w = 0. The complex discriminant root is
// used uniformly; sinh(z)/z is evaluated by series near z = 0.
StatePair constant_damping_closed_form(double a0, double s,
                                       const StatePair& state0, double t);

// E(t) on n uniform samples of [0, T]; smooth = true probes T(t)A^{-1} by
// applying the inverse to the initial state first.
Trajectory decay_curve(const Generator& gen, const StatePair& state0, double T,
                       int n, bool smooth, const EvolveOptions& opt);

}  // namespace dfkg
