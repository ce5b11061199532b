// Acceptance suite: one check per criterion, one PASS/FAIL line each.
// Tolerances are pinned here, not configurable.

#include "geometry.hpp"
#include "oracles.hpp"
#include "ratefit.hpp"
#include "resolvent.hpp"
#include "runner.hpp"
#include "scenario.hpp"
#include "theory.hpp"

#include <Eigen/SVD>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dfkg;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double stacked_rel_error(const Generator& gen, const StatePair& a,
                         const StatePair& b) {
  const Eigen::VectorXcd za = gen.to_weighted(a);
  const Eigen::VectorXcd zb = gen.to_weighted(b);
  return (za - zb).norm() / zb.norm();
}

// --- criterion 1: closed-form oracle equivalence ---------------------------

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const TorusGrid g(1, 40.0, 64);
  const Generator gen(g, 2.0, DampingSpec{Constant{1.0}});
  const StatePair st = initial_state(g, 2.0, 20240614);
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(10.0 * i / 20.0);

  double worst_dense = 0.0, worst_strang = 0.0;
  {
    EvolveOptions opt;
    opt.method = EvolveMethod::DenseExpm;
    opt.store_states = true;
    const Trajectory traj = evolve(gen, st, times, opt);
    for (size_t i = 0; i < times.size(); ++i) {
      const StatePair ref =
          constant_damping_closed_form(1.0, 2.0, st, times[i]);
      worst_dense =
          std::max(worst_dense, stacked_rel_error(gen, traj.states[i], ref));
    }
  }
  {
    EvolveOptions opt;
    opt.method = EvolveMethod::StrangSplit;
    opt.dt = 1e-3;
    opt.store_states = true;
    const Trajectory traj = evolve(gen, st, times, opt);
    for (size_t i = 0; i < times.size(); ++i) {
      const StatePair ref =
          constant_damping_closed_form(1.0, 2.0, st, times[i]);
      worst_strang =
          std::max(worst_strang, stacked_rel_error(gen, traj.states[i], ref));
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream ss;
  ss << "closed-form equivalence: dense err " << worst_dense << " (<= 1e-8), "
     << "strang err " << worst_strang << " (<= 1e-4), " << elapsed
     << " s (<= 10)";
  report(1, worst_dense <= 1e-8 && worst_strang <= 1e-4 && elapsed <= 10.0,
         ss.str());
}

// --- criterion 2: dissipation and contraction ------------------------------

void criterion_2() {
  struct Entry {
    const char* preset;
    int d;
    double L;
    int N;
  };
  const Entry catalog[] = {{"constant", 1, 20.0, 32},
                           {"interval-gap", 1, 20.0, 32},
                           {"smooth-bumps", 1, 20.0, 32},
                           {"finite-sublevel", 2, 6.0, 8},
                           {"ball-lattice", 2, 4.0, 8},
                           {"grid-lines", 2, 4.0, 8}};
  bool ok = true;
  std::string detail;
  for (const Entry& e : catalog) {
    const TorusGrid g(e.d, e.L, e.N);
    for (double s : {1.0, 2.0, 4.0}) {
      const Generator gen(g, s, damping_preset(e.preset, e.d));
      const StatePair st = initial_state(g, s, 42);
      EvolveOptions opt;
      opt.method = EvolveMethod::DenseExpm;
      opt.store_states = true;
      const double h = 0.02;
      std::vector<double> times;
      for (int i = 0; i <= 25; ++i) times.push_back(h * i);
      const Trajectory traj = evolve(gen, st, times, opt);
      const double e0 = traj.energies[0];
      for (size_t i = 0; i + 1 < times.size(); ++i) {
        if (traj.energies[i + 1] > traj.energies[i] * (1.0 + 1e-9)) {
          ok = false;
          detail = std::string("energy increased for ") + e.preset;
        }
        const double lhs = (traj.energies[i + 1] - traj.energies[i]) / h;
        const double rhs = -0.5 * (dissipation_rate(gen, traj.states[i]) +
                                   dissipation_rate(gen, traj.states[i + 1]));
        if (std::abs(lhs - rhs) > (h + 1e-6) * e0) {
          ok = false;
          detail = std::string("dissipation identity defect for ") + e.preset +
                   " at s=" + std::to_string(s);
        }
      }
    }
  }
  report(2, ok,
         ok ? "dissipation identity and per-step contraction over the "
              "catalog, s in {1,2,4}"
            : detail);
}

// --- criterion 3: constant-damping decay rate ------------------------------

void criterion_3() {
  const TorusGrid g(1, 40.0, 64);
  const StatePair st = initial_state(g, 2.0, 20240614);
  std::vector<double> ts, ys;
  for (int i = 0; i <= 40; ++i) {
    const double t = 10.0 + 10.0 * i / 40.0;
    const StatePair at = constant_damping_closed_form(1.0, 2.0, st, t);
    ts.push_back(t);
    ys.push_back(std::log(energy(at, 2.0)));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    sx += ts[i];
    sy += ys[i];
    sxx += ts[i] * ts[i];
    sxy += ts[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  std::ostringstream ss;
  ss << "constant damping a0=1: energy slope on [10,20] = " << slope
     << " (target -1, 10%)";
  report(3, std::abs(slope + 1.0) <= 0.1, ss.str());
}

// --- criterion 4: skew-adjoint identity ------------------------------------

void criterion_4() {
  const TorusGrid g(1, 15.0, 32);
  const Generator gen(g, 2.0, damping_preset("smooth-bumps", 1));
  std::mt19937_64 rng(991);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> ul(-5.0, 10.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXcd z(2 * g.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
      z[i] = Complex(gauss(rng), gauss(rng));
    const double lambda = trial < 3 ? std::vector<double>{0.0, 1.0, 5.0}[trial]
                                    : ul(rng);
    const Eigen::VectorXcd Az = gen.apply_weighted(z, lambda);
    SpectralField v{g, Rep::Freq, z.tail(g.size())};
    SpectralField vs = to_space(v);
    double diss = 0.0;
    for (Eigen::Index k = 0; k < g.size(); ++k)
      diss += gen.damping_samples()[k] * std::norm(vs.values[k]);
    worst = std::max(worst,
                     std::abs(std::real(Az.dot(z)) + diss) / z.squaredNorm());
  }
  std::ostringstream ss;
  ss << "skew-adjoint identity over 100 random (F, lambda): worst "
     << worst << " (<= 1e-10)";
  report(4, worst <= 1e-10, ss.str());
}

// --- criterion 5: diagonalization residual ----------------------------------

void criterion_5() {
  double worst = 0.0;
  for (int cfg = 0; cfg < 2; ++cfg) {
    const TorusGrid g = cfg == 0 ? TorusGrid(1, 12.0, 32) : TorusGrid(2, 6.0, 4);
    for (double lambda : {-3.0, 0.0, 2.0}) {
      for (double s : {1.0, 2.0}) {
        const Eigen::Index M = g.size();
        const double sgn = lambda >= 0.0 ? 1.0 : -1.0;
        const Complex i_unit(0.0, 1.0);
        Eigen::MatrixXcd P1 = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
        Eigen::MatrixXcd P1inv = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
        Eigen::MatrixXcd A0 = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
        const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
        for (Eigen::Index k = 0; k < M; ++k) {
          const double h = half_symbol(s, g.freq_sq(k));
          P1(k, k) = inv_sqrt2 * h;
          P1(k, M + k) = -inv_sqrt2 * i_unit * sgn;
          P1(M + k, k) = inv_sqrt2 * h;
          P1(M + k, M + k) = inv_sqrt2 * i_unit * sgn;
          P1inv(k, k) = inv_sqrt2 / h;
          P1inv(k, M + k) = inv_sqrt2 / h;
          P1inv(M + k, k) = inv_sqrt2 * i_unit * sgn;
          P1inv(M + k, M + k) = -inv_sqrt2 * i_unit * sgn;
          A0(k, k) = -i_unit * lambda;
          A0(k, M + k) = 1.0;
          A0(M + k, k) = -h * h;
          A0(M + k, M + k) = -i_unit * lambda;
        }
        const Eigen::MatrixXcd D = P1 * A0 * P1inv;
        for (Eigen::Index k = 0; k < M; ++k) {
          const double h = half_symbol(s, g.freq_sq(k));
          const Complex top = i_unit * sgn * (h - std::abs(lambda));
          const Complex bottom = -i_unit * sgn * (h + std::abs(lambda));
          worst = std::max(worst, std::abs(D(k, k) - top));
          worst = std::max(worst, std::abs(D(M + k, M + k) - bottom));
          worst = std::max(worst, std::abs(D(k, M + k)));
          worst = std::max(worst, std::abs(D(M + k, k)));
        }
      }
    }
  }
  std::ostringstream ss;
  ss << "diagonalizer conjugation residual (entrywise): " << worst
     << " (<= 1e-10)";
  report(5, worst <= 1e-10, ss.str());
}

// --- criterion 6: constant-chain conformance --------------------------------

Eigen::MatrixXcd assemble_projected_pair(const Generator& gen,
                                         const AnnulusSet& sigma) {
  // f -> ((I - Pi_Sigma) F f, sqrt(a) f), space basis
  const TorusGrid& g = gen.grid();
  const Eigen::Index M = g.size();
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(2 * M, M);
  SpectralField e{g, Rep::Space, Eigen::VectorXcd::Zero(M)};
  for (Eigen::Index j = 0; j < M; ++j) {
    e.values[j] = 1.0;
    Eigen::VectorXcd fhat = to_freq(e).values;
    for (Eigen::Index k = 0; k < M; ++k)
      if (sigma.mask[k]) fhat[k] = 0.0;
    T.col(j).head(M) = fhat;
    T(M + j, j) = gen.sqrt_damping()[j];
    e.values[j] = 0.0;
  }
  return T;
}

Eigen::MatrixXcd assemble_sublevel_halfwave(const Generator& gen,
                                            const SublevelMask& smask,
                                            double lambda) {
  // f -> ((H - lambda) f_hat, 1_{S^c} f), frequency-domain input
  const TorusGrid& g = gen.grid();
  const Eigen::Index M = g.size();
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(2 * M, M);
  SpectralField e{g, Rep::Freq, Eigen::VectorXcd::Zero(M)};
  for (Eigen::Index j = 0; j < M; ++j) {
    T(j, j) = gen.half_symbols()[j] - lambda;
    e.values[j] = 1.0;
    SpectralField col = to_space(e);
    for (Eigen::Index k = 0; k < M; ++k)
      if (smask.mask[k]) col.values[k] = 0.0;
    T.col(j).tail(M) = to_freq(col).values;
    e.values[j] = 0.0;
  }
  return T;
}

void criterion_6() {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> ul(0.0, 10.0);
  const char* presets[] = {"constant", "interval-gap", "smooth-bumps",
                           "finite-sublevel"};
  const double s_choices[] = {1.0, 2.0, 4.0};
  const int n_choices[] = {8, 16, 32};
  const double slack = 1.0 + 1e-9;

  bool ok = true;
  std::string detail;
  int checked_24 = 0;
  for (int inst = 0; inst < 20 && ok; ++inst) {
    const TorusGrid g(1, 16.0, n_choices[inst % 3]);
    const DampingSpec damping = damping_preset(presets[inst % 4], 1);
    const double s = s_choices[inst % 3];
    const double lambda = ul(rng);
    const Generator gen(g, s, damping);
    const double B = gen.sqrt_damping().maxCoeff();
    const double a_inf = gen.damping_sup();

    const double C_full = resolvent_constant_full(gen, lambda).constant;
    const double C_hw = halfwave_constant(gen, lambda).constant;
    if (!std::isfinite(C_full) || !std::isfinite(C_hw)) {
      ok = false;
      detail = "unexpected singular instance";
      break;
    }

    // halfwave (C1, C2) -> full-A chain
    {
      const double C1 = C_hw, C2 = C_hw;
      const double C3 = std::max(C1, (1.0 + C2 * B) / (1.0 + lambda));
      const double bound =
          2.0 * (std::numbers::sqrt2 * C3 + 2.0 * std::pow(C2 + C3 * B, 2.0));
      if (C_full > bound * slack) {
        ok = false;
        detail = "halfwave->full bound violated at instance " +
                 std::to_string(inst);
      }
    }

    // multiplier -> Sigma-support: one-sided constant on Sigma(lambda, s,
    // 1/(2 C1)) is at most 2 C2
    {
      const double mu = 1.0 / (2.0 * C_hw);
      const AnnulusSet sigma = annulus(lambda, s, mu, g);
      if (sigma.count > 0) {
        ++checked_24;
        const double C_one = annihilation_one_sided(gen, sigma).constant;
        if (C_one > 2.0 * C_hw * slack) {
          ok = false;
          detail = "Sigma-support bound violated at instance " +
                   std::to_string(inst);
        }

        // Sigma-support -> off-support pair: combined constant of
        // ((I-Pi)F f, B f) is at most |(1 + C0 B, C0)|_2
        const Eigen::MatrixXcd P = assemble_projected_pair(gen, sigma);
        const double sig = sigma_min_dense(P);
        if (sig > 0.0) {
          const double combined = 1.0 / sig;
          const double C1p = 1.0 + C_one * B;
          const double bound = std::hypot(C1p, C_one);
          if (combined > bound * slack) {
            ok = false;
            detail = "off-support pair bound violated at instance " +
                     std::to_string(inst);
          }
        }
      }
    }

    // full -> annihilation at eps = 1/(2 sqrt2 C), mu = 1/(2 C)
    {
      const double eps = 1.0 / (2.0 * std::numbers::sqrt2 * C_full);
      const double mu = 1.0 / (2.0 * C_full);
      const AnnulusSet sigma = annulus(lambda, s, mu, g);
      const SublevelMask smask = sublevel_mask(damping, g, eps);
      const AnnihilationResult two = annihilation_two_sided(smask, sigma);
      const double sum_bound =
          2.0 * (1.0 + std::numbers::sqrt2 * C_full * a_inf);
      if (two.combined_constant >
          std::numbers::sqrt2 * sum_bound * slack) {
        ok = false;
        detail = "full->annihilation bound violated at instance " +
                 std::to_string(inst);
      }

      // annihilation -> full with the measured combined constant (a valid
      // sum-form constant)
      if (std::isfinite(two.combined_constant)) {
        const double bound = 8.0 * std::pow(1.0 + 1.0 / mu, 2.0) *
                             (1.0 + 1.0 / eps + a_inf) *
                             std::pow(1.0 + two.combined_constant, 2.0);
        if (C_full > bound * slack) {
          ok = false;
          detail = "annihilation->full bound violated at instance " +
                   std::to_string(inst);
        }
      }
    }

    // sublevel halfwave -> full (indicator route) at a fixed eps
    {
      const double eps = 0.5;
      const SublevelMask smask = sublevel_mask(damping, g, eps);
      const double sig =
          sigma_min_dense(assemble_sublevel_halfwave(gen, smask, lambda));
      if (sig > 0.0) {
        const double C1 = 1.0 / sig, C2 = C1;
        const double C3 = std::max(C1, (1.0 + C2) / (1.0 + lambda));
        const double t = C2 / std::sqrt(eps) + C3 * std::sqrt(a_inf);
        const double bound =
            2.0 * (std::numbers::sqrt2 * C3 + 2.0 * t * t);
        if (C_full > bound * slack) {
          ok = false;
          detail = "sublevel-halfwave->full bound violated at instance " +
                   std::to_string(inst);
        }
      }
    }
  }
  std::ostringstream ss;
  ss << "constant chains on 20 random instances (Sigma-support checks on "
     << checked_24 << ")";
  report(6, ok, ok ? ss.str() : detail);
}

// --- criterion 7: elementary inequalities -----------------------------------

void criterion_7() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> ua(0.0, 50.0);
  std::uniform_real_distribution<double> ur1(1e-6, 1.0);
  std::uniform_real_distribution<double> ur2(1.0 + 1e-6, 6.0);
  bool ok = true;
  std::string detail;

  for (int i = 0; i < 100000 && ok; ++i) {
    double a1 = ua(rng), a2 = ua(rng);
    if (a1 == 0.0 && a2 == 0.0) a1 = 1.0;
    const double r = ur1(rng);
    const double lhs = std::abs(std::pow(a1, r) - std::pow(a2, r));
    const double rhs =
        std::pow((a1 + a2) / 2.0, r - 1.0) * std::abs(a1 - a2);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) {
      ok = false;
      detail = "midpoint-weight inequality violated";
    }
  }
  for (int i = 0; i < 100000 && ok; ++i) {
    const double a1 = ua(rng), a2 = ua(rng);
    const double r = ur2(rng);
    const double lhs = std::abs(std::pow(a1, r) - std::pow(a2, r));
    const double rhs = r * std::pow(std::max(a1, a2), r - 1.0) *
                       std::abs(a1 - a2);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) {
      ok = false;
      detail = "mean-value inequality violated";
    }
  }

  // downward symbol inequality (s >= s0)
  std::uniform_real_distribution<double> uxi(0.0, 40.0);
  std::uniform_real_distribution<double> us(0.3, 6.0);
  std::uniform_real_distribution<double> ulam(0.0, 8.0);
  for (int i = 0; i < 10000 && ok; ++i) {
    double s = us(rng), s0 = us(rng);
    if (s < s0) std::swap(s, s0);
    const double lambda = ulam(rng);
    const double q = uxi(rng);
    const double lhs =
        std::abs(half_symbol(s0, q) - std::pow(lambda, s0 / s));
    const double rhs = std::pow((1.0 + lambda) / 2.0, s0 / s - 1.0) *
                       std::abs(half_symbol(s, q) - lambda);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) {
      ok = false;
      detail = "downward symbol inequality violated";
    }
  }

  // upward shell inclusion (0 < s < s0): sample inside the shell by
  // inverting the symbol, so each draw exercises the implication
  std::uniform_real_distribution<double> umu(0.05, 2.0);
  std::uniform_real_distribution<double> up(0.0, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int included = 0;
  for (int i = 0; i < 10000 && ok; ++i) {
    double s = us(rng), s0 = us(rng);
    if (s > s0) std::swap(s, s0);
    if (s == s0) continue;
    const double mu0 = umu(rng);
    const double p = up(rng);
    const double lambda = ulam(rng);
    const double mu = std::min(mu0 * s / s0, 1.0);
    const double qexp = exponent_q(s, s0, p);
    const double half_width = mu * std::pow(1.0 + lambda, -qexp);
    const double lo = std::max(1.0, lambda - half_width);
    const double hi = lambda + half_width;
    if (!(hi > lo)) continue;  // shell misses the symbol range
    const double target = lo + (hi - lo) * (0.01 + 0.98 * unit(rng));
    const double q = std::pow(target, 4.0 / s) - 1.0;
    if (!(std::abs(half_symbol(s, q) - lambda) < half_width)) continue;
    ++included;
    const double lhs =
        std::abs(half_symbol(s0, q) - std::pow(lambda, s0 / s));
    const double rhs = mu0 * std::pow(1.0 + std::pow(lambda, s0 / s), -p);
    if (lhs >= rhs * (1.0 + 1e-12)) {
      ok = false;
      detail = "shell inclusion violated";
    }
  }
  std::ostringstream ss;
  ss << "elementary inequalities (1e5 each) and shell inclusions ("
     << included << " membership hits)";
  report(7, ok && included > 5000, ok ? ss.str() : detail);
}

// --- criterion 8: annihilation brute force ----------------------------------

void criterion_8() {
  bool ok = true;
  std::string detail;
  int meaningful = 0, sandwiches = 0;
  for (int N : {8, 16}) {
    const TorusGrid g(1, 12.0, N);
    std::mt19937_64 rng(3000 + N);
    std::bernoulli_distribution coin(0.25);
    for (int trial = 0; trial < 50 && ok; ++trial) {
      SublevelMask smask;
      smask.grid = g;
      smask.epsilon = 0.5;
      smask.mask.assign(g.size(), 0);
      AnnulusSet sigma;
      sigma.grid = g;
      sigma.lambda = 1.0;
      sigma.s = 2.0;
      sigma.mu = 0.5;
      sigma.mask.assign(g.size(), 0);
      for (Eigen::Index k = 0; k < g.size(); ++k) {
        smask.mask[k] = coin(rng) ? 1 : 0;
        sigma.mask[k] = coin(rng) ? 1 : 0;
      }
      sigma.mask[1] = 1;
      sigma.count = 0;
      for (char c : sigma.mask)
        if (c) ++sigma.count;

      const AnnihilationResult two = annihilation_two_sided(smask, sigma);
      const Eigen::MatrixXcd T = assemble_two_sided(smask, sigma);
      const double ref = oracle::sigma_min_normal(T);
      if (ref > 1e-6) {
        ++meaningful;
        if (std::abs(two.sigma_min - ref) > 1e-8 * ref) {
          ok = false;
          detail = "two-sided mismatch vs brute force";
        }
      } else if (two.sigma_min > 1e-6) {
        ok = false;
        detail = "near-singular disagreement";
      }

      const ResolventPoint one = annihilation_one_sided(smask, sigma);
      const Eigen::MatrixXcd T1 = assemble_one_sided(smask, sigma);
      const double ref1 = oracle::sigma_min_normal(T1);
      if (ref1 > 1e-6 && std::abs(one.sigma_min - ref1) > 1e-8 * ref1) {
        ok = false;
        detail = "one-sided mismatch vs brute force";
      }

      // sum-form sandwich on well-conditioned instances
      if (ok && ref > 1e-3 && trial % 5 == 0) {
        ++sandwiches;
        const Eigen::Index M = g.size();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(T, Eigen::ComputeThinV);
        const Eigen::VectorXcd seed = svd.matrixV().col(M - 1);
        const double est = oracle::sharp_sum_constant_estimate(
            T.topRows(M), T.bottomRows(M), seed);
        if (est > two.sum_hi * (1.0 + 1e-8) ||
            est < two.sum_lo * (1.0 - 1e-8)) {
          ok = false;
          detail = "sum-form constant outside [combined/sqrt2, combined]";
        }
      }
    }
  }
  std::ostringstream ss;
  ss << "brute-force equivalence on 2x50 random (S, Sigma) pairs ("
     << meaningful << " well-conditioned, " << sandwiches << " sandwiches)";
  report(8, ok && meaningful >= 80, ok ? ss.str() : detail);
}

// --- criterion 9: annulus geometry ------------------------------------------

void criterion_9() {
  bool ok = true;
  std::string detail;

  const double w = annulus_width(100.0, 2.0, 1.0);
  if (std::abs(w - 2.0) > 0.01 * 2.0) {
    ok = false;
    detail = "width at lambda=100 not within 1% of 2";
  }

  for (double r : {1.0, 10.0}) {
    const AnnulusTranslation t = annulus_translation(1.0, 0.5, r);
    const double amag = std::hypot(t.a[0], t.a[1]);
    if (!(amag - r >= t.r_inner && amag + r <= t.r_outer)) {
      ok = false;
      detail = "translated ball not inside the shell (radial check)";
    }
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(-r, r);
    for (int i = 0; i < 2000; ++i) {
      const double x = u(rng), y = u(rng);
      if (x * x + y * y >= r * r) continue;
      const double q = (t.a[0] + x) * (t.a[0] + x) + (t.a[1] + y) * (t.a[1] + y);
      if (!(std::abs(half_symbol(1.0, q) - t.lambda) < 0.5)) {
        ok = false;
        detail = "membership scan found a point outside the shell";
      }
    }
  }

  for (int d : {1, 2}) {
    double worst = 0.0;
    for (int i = 0; i <= 5000; ++i) {
      const double lambda = 2.0 + (1000.0 - 2.0) * i / 5000.0;
      const double hi = std::pow(std::pow(lambda + 1.0, 2.0 / d) - 1.0,
                                 d / 2.0);
      const double lo = std::pow(std::pow(lambda - 1.0, 2.0 / d) - 1.0,
                                 d / 2.0);
      worst = std::max(worst, hi - lo);
    }
    if (worst > 3.0) {
      ok = false;
      detail = "shell measure unbounded at s = 2d, d=" + std::to_string(d);
    }
  }

  report(9, ok,
         ok ? "annulus width limit, translation containment (r in {1,10}), "
              "bounded s=2d shell measure"
            : detail);
}

// --- criterion 10: GCC catalog -----------------------------------------------

void criterion_10() {
  bool ok = true;
  std::string detail;
  const TorusGrid g(2, 4.0, 16);
  SamplingPlan plan;
  plan.centers_per_axis = 16;
  plan.directions = 32;
  plan.quad_per_axis = 24;
  plan.segment_samples = 192;

  const Region balls = damped_region(damping_preset("ball-lattice", 2), g, 0.5);
  const Region lines = damped_region(damping_preset("grid-lines", 2), g, 0.5);

  const GccReport d1 = check_d_gcc(balls, 1.0, g, plan);
  const GccReport d2 = check_d_gcc(balls, 1.0, g, plan.scaled(2));
  const GccReport o1 = check_one_gcc(balls, 5.0, g, plan);
  const GccReport o2 = check_one_gcc(balls, 5.0, g, plan.scaled(2));
  const GccReport l1 = check_one_gcc(lines, 2.0, g, plan);
  const GccReport l2 = check_one_gcc(lines, 2.0, g, plan.scaled(2));
  const GccReport z1 =
      check_zero_gcc(DampingSpec{Constant{1.0}}, g, 0.5);
  const GccReport z2 = check_zero_gcc(DampingSpec{Constant{1.0}},
                                      TorusGrid(2, 4.0, 32), 0.5);

  if (d1.verdict != Verdict::Holds || d2.verdict != Verdict::Holds) {
    ok = false;
    detail = "ball lattice should satisfy d-GCC at both densities";
  }
  if (o1.verdict != Verdict::Fails || o2.verdict != Verdict::Fails) {
    ok = false;
    detail = "ball lattice should fail 1-GCC at both densities";
  }
  if (ok) {
    // the avoiding witness is an explicit axis-parallel line between balls
    const double axis = std::max(std::abs(o1.witness_direction[0]),
                                 std::abs(o1.witness_direction[1]));
    if (std::abs(axis - 1.0) > 1e-9 || o1.infimum_estimate != 0.0) {
      ok = false;
      detail = "missing explicit avoiding-line witness";
    }
  }
  if (l1.verdict != Verdict::Holds || l2.verdict != Verdict::Holds) {
    ok = false;
    detail = "grid lines should satisfy 1-GCC at both densities";
  }
  if (z1.verdict != Verdict::Holds || z2.verdict != Verdict::Holds) {
    ok = false;
    detail = "full-measure damping should satisfy 0-GCC at both densities";
  }
  report(10, ok,
         ok ? "GCC catalog verdicts with witnesses, stable under doubled "
              "sampling"
            : detail);
}

// --- criterion 11: classifier golden tables ----------------------------------

void criterion_11() {
  bool ok = true;
  std::string detail;
  auto expect_tag = [&](const Facts& f, StabilityTag tag, const char* what) {
    if (!ok) return;
    const ClassifyResult r = classify(f);
    if (r.cls.tag != tag) {
      ok = false;
      detail = std::string("expected ") + what;
    }
  };
  auto expect_not_exp = [&](const Facts& f, bool want, const char* what) {
    if (!ok) return;
    const ClassifyResult r = classify(f);
    bool has = false;
    for (const auto& n : r.negatives)
      if (n.rfind("not exponential", 0) == 0) has = true;
    if (has != want) {
      ok = false;
      detail = std::string("negative certificate wrong for ") + what;
    }
  };

  Facts f;

  // d=1, s<2
  f = Facts{};
  f.d = 1;
  f.s = 1.0;
  f.zero = Tri::Holds;
  expect_tag(f, StabilityTag::Exponential, "0-GCC exponential (d=1, s<2)");
  f = Facts{};
  f.d = 1;
  f.s = 1.0;
  f.zero = Tri::Fails;
  f.one = Tri::Holds;
  expect_tag(f, StabilityTag::Polynomial, "1-GCC polynomial (d=1, s<2)");
  expect_not_exp(f, true, "0-GCC necessity below s=2");

  // d=1, s>=2
  f = Facts{};
  f.d = 1;
  f.s = 3.0;
  f.one = Tri::Holds;
  f.zero = Tri::Fails;
  expect_tag(f, StabilityTag::Exponential, "1-GCC exponential (d=1, s>=2)");
  expect_not_exp(f, false, "crossed arrow: 0-GCC not necessary");
  f = Facts{};
  f.d = 1;
  f.s = 3.0;
  f.one = Tri::Fails;
  expect_not_exp(f, true, "1-GCC necessity (d=1, s>=2)");

  // d>=2, s<2
  f = Facts{};
  f.d = 2;
  f.s = 1.0;
  f.zero = Tri::Fails;
  f.one = Tri::Holds;
  f.uniformly_continuous = Tri::Holds;
  expect_tag(f, StabilityTag::Polynomial, "1-GCC polynomial (d=2, s<2)");
  f = Facts{};
  f.d = 2;
  f.s = 1.0;
  f.dd = Tri::Holds;
  expect_tag(f, StabilityTag::Logarithmic, "d-GCC logarithmic (d=2, s<2)");

  // d>=2, s=2: equivalence with continuity on the necessary side
  f = Facts{};
  f.d = 2;
  f.s = 2.0;
  f.one = Tri::Holds;
  f.uniformly_continuous = Tri::Holds;
  expect_tag(f, StabilityTag::Exponential, "1-GCC exponential (d=2, s=2)");
  f = Facts{};
  f.d = 2;
  f.s = 2.0;
  f.zero = Tri::Fails;
  f.one = Tri::Fails;
  f.dd = Tri::Holds;
  f.continuous = Tri::Holds;
  expect_tag(f, StabilityTag::Logarithmic, "Table-4 logarithmic row");
  expect_not_exp(f, true, "1-GCC necessity at s=2 with continuity");
  f.continuous = Tri::Unknown;
  expect_not_exp(f, false, "necessity silent without continuity");

  // d>=2, 2<s<=4: sufficiency only
  f = Facts{};
  f.d = 2;
  f.s = 3.0;
  f.one = Tri::Fails;
  f.dd = Tri::Holds;
  expect_tag(f, StabilityTag::Logarithmic, "open regime stays logarithmic");
  expect_not_exp(f, false, "no necessity claim for 2<s<4");

  // d>=2, s>=4: 1-GCC is not necessary (the periodic route)
  f = Facts{};
  f.d = 2;
  f.s = 4.0;
  f.periodic_superset = Tri::Holds;
  f.one = Tri::Fails;
  expect_tag(f, StabilityTag::Exponential,
             "exponential without 1-GCC at s>=4");
  expect_not_exp(f, false, "no contradiction at s>=4");

  // d-GCC failure kills every decay class
  f = Facts{};
  f.d = 2;
  f.s = 2.0;
  f.dd = Tri::Fails;
  if (ok) {
    const ClassifyResult r = classify(f);
    if (r.negatives.size() < 4 || r.cls.tag != StabilityTag::Unknown) {
      ok = false;
      detail = "d-GCC failure must forbid all decay classes";
    }
  }

  report(11, ok, ok ? "golden tables: every arrow and crossed arrow" : detail);
}

// --- criterion 12: extrapolation consistency ----------------------------------

void criterion_12() {
  bool ok = true;
  std::string detail;
  const std::vector<double> lattice = {0.25, 0.5, 1.0, 1.5, 2.0,
                                       2.5,  3.0, 3.5, 3.9};
  // finite measure: anchor exponential at s0 = 2d -> (4d/s - 2)^{-1} below
  for (int d : {1, 2}) {
    for (double s : lattice) {
      if (s >= 2.0 * d) continue;
      const StabilityClass c =
          extrapolate(StabilityClass::exponential(), 2.0 * d, s);
      const double expect = 1.0 / (4.0 * d / s - 2.0);
      if (c.tag != StabilityTag::Polynomial ||
          std::abs(c.rate - expect) > 1e-14 * expect) {
        ok = false;
        detail = "finite-measure specialization mismatch";
      }
    }
  }
  // periodic: anchor at s0 = 4 -> (8/s - 2)^{-1} below
  for (double s : lattice) {
    if (s >= 4.0) continue;
    const StabilityClass c = extrapolate(StabilityClass::exponential(), 4.0, s);
    const double expect = 1.0 / (8.0 / s - 2.0);
    if (std::abs(c.rate - expect) > 1e-14 * expect) {
      ok = false;
      detail = "periodic specialization mismatch";
    }
  }
  // d=1: anchor at s0 = 2 -> s/(4-2s) below
  for (double s : lattice) {
    if (s >= 2.0) continue;
    const StabilityClass c = extrapolate(StabilityClass::exponential(), 2.0, s);
    const double expect = s / (4.0 - 2.0 * s);
    if (std::abs(c.rate - expect) > 1e-14 * expect) {
      ok = false;
      detail = "one-dimensional specialization mismatch";
    }
    // and the 2q identity itself
    if (std::abs(2.0 * exponent_q(s, 2.0, 0.0) - (4.0 / s - 2.0)) > 1e-14) {
      ok = false;
      detail = "2q identity mismatch";
    }
  }
  report(12, ok,
         ok ? "extrapolation reproduces the three stated specializations "
              "exactly"
            : detail);
}

// --- criterion 13: end-to-end smoke -------------------------------------------

void criterion_13() {
  const auto t0 = std::chrono::steady_clock::now();
  namespace fs = std::filesystem;
  bool ok = true;
  std::string detail;

  auto run_one = [&](double s, bool smooth, double T,
                     const std::string& tag) -> nlohmann::json {
    std::ostringstream cfg;
    cfg << "name = \"smoke-" << tag << "\"\n"
        << "seed = 20240614\n"
        << "s = " << s << "\n"
        << "analyses = [\"simulate\", \"gcc_check\", \"classify\"]\n"
        << "[grid]\nd = 2\nL = 4.0\nN = 32\n"
        << "[damping]\nkind = \"preset\"\nname = \"ball-lattice\"\n"
        << "[simulate]\nT = " << T << "\nsamples = "
        << (1 + static_cast<int>(T / 2.5))
        << "\nmethod = \"strang_split\"\ndt = 0.02\nsmooth = "
        << (smooth ? "true" : "false") << "\n"
        << "[gcc_check]\nepsilon = 0.5\nr = 1.0\nell = 4.0\n"
        << "centers_per_axis = 16\nsegment_samples = 128\n"
        << "[classify]\nepsilon = 0.5\n";
    Scenario sc = parse_scenario_text(cfg.str(), "smoke-" + tag);
    const fs::path dir = fs::temp_directory_path() / ("dfkg_smoke_" + tag);
    fs::remove_all(dir);
    sc.output_dir = dir.string();
    const RunReport rep = run_scenario(sc);
    if (!rep.all_completed) {
      ok = false;
      detail = "smoke scenario " + tag + " did not complete";
    }
    auto j = nlohmann::json::parse(rep.json);
    fs::remove_all(dir);
    return j;
  };

  // s = 4, plain probe: exponential with omega > 0
  {
    const nlohmann::json j = run_one(4.0, false, 400.0, "s4");
    if (ok) {
      const auto sel = j["analyses"]["simulate"]["per_s"][0]["selected"];
      const std::string model = sel["model"];
      const double rate = sel["rate"]["value"];
      const std::string verdict = j["conformance"][0]["verdict"];
      if (model != "exponential" || !(rate > 0.0)) {
        ok = false;
        detail = "s=4 fitted model " + model + ", expected exponential";
      } else if (verdict != "consistent") {
        ok = false;
        detail = "s=4 conformance " + verdict;
      }
      if (ok && j["analyses"]["classify"]["per_s"][0]["class"]["tag"] !=
                    "exponential") {
        ok = false;
        detail = "s=4 prediction should be exponential";
      }
    }
  }

  // s = 2, smooth probe: polynomial or better
  if (ok) {
    const nlohmann::json j = run_one(2.0, true, 600.0, "s2");
    if (ok) {
      const auto sel = j["analyses"]["simulate"]["per_s"][0]["selected"];
      const std::string model = sel["model"];
      const std::string verdict = j["conformance"][0]["verdict"];
      if (model != "polynomial" && model != "exponential") {
        ok = false;
        detail = "s=2 fitted model " + model + ", expected polynomial or "
                 "better";
      } else if (verdict != "consistent") {
        ok = false;
        detail = "s=2 conformance " + verdict;
      }
      if (ok && j["analyses"]["classify"]["per_s"][0]["class"]["tag"] !=
                    "polynomial") {
        ok = false;
        detail = "s=2 prediction should be polynomial";
      }
    }
  }

  const double elapsed = seconds_since(t0);
  if (elapsed > 300.0) {
    ok = false;
    detail = "smoke exceeded the 5 minute budget";
  }
  std::ostringstream ss;
  ss << "end-to-end smoke on the periodic ball lattice (class check, "
     << elapsed << " s <= 300); continuum rates are out of scope here";
  report(13, ok, ok ? ss.str() : detail);
}

}  // namespace

int main() {
  std::printf("acceptance: fractional damped Klein-Gordon laboratory\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  criterion_13();
  if (g_failures == 0) {
    std::printf("acceptance: all 13 criteria satisfied\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
