#include "selftest.hpp"

#include "evolution.hpp"
#include "geometry.hpp"
#include "oracles.hpp"
#include "plot.hpp"
#include "ratefit.hpp"
#include "resolvent.hpp"
#include "runner.hpp"
#include "theory.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

namespace dfkg {

namespace {

using Check = std::function<std::optional<std::string>()>;

std::optional<std::string> expect(bool ok, const std::string& detail) {
  if (ok) return std::nullopt;
  return detail;
}

std::optional<std::string> parseval_roundtrip() {
  const TorusGrid g(2, 9.0, 16);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField f{g, Rep::Space, Eigen::VectorXcd(g.size())};
  for (Eigen::Index k = 0; k < g.size(); ++k)
    f.values[k] = Complex(gauss(rng), gauss(rng));
  const SpectralField fh = transform(f, TransformDirection::Forward);
  const SpectralField back = transform(fh, TransformDirection::Inverse);
  const double rt = (back.values - f.values).norm() / f.values.norm();
  const double pv = std::abs(norm_l2(fh) - norm_l2(f)) / norm_l2(f);
  if (rt > 1e-12) return "round trip error " + std::to_string(rt);
  if (pv > 1e-12) return "Parseval defect " + std::to_string(pv);
  return std::nullopt;
}

std::optional<std::string> annulus_radii_vs_scan() {
  const TorusGrid g(1, 20.0, 32);
  const AnnulusSet a = annulus(3.0, 2.0, 1.0, g);
  const auto scan = oracle::scan_annulus(3.0, 2.0, 1.0, 8.0, 400000);
  if (!scan.any) return std::string("scan found no members");
  if (std::abs(scan.first - a.r_inner) > 1e-4 ||
      std::abs(scan.last - a.r_outer) > 1e-4)
    return "scan radii disagree with the formula";
  return std::nullopt;
}

std::optional<std::string> closed_form_vs_dense() {
  const TorusGrid g(1, 20.0, 32);
  const Generator gen(g, 2.0, DampingSpec{Constant{1.0}});
  const StatePair st = initial_state(g, 2.0, 7);
  EvolveOptions opt;
  opt.method = EvolveMethod::DenseExpm;
  opt.store_states = true;
  const Trajectory traj = evolve(gen, st, {0.5, 1.5, 2.5}, opt);
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const StatePair ref =
        constant_damping_closed_form(1.0, 2.0, st, traj.times[i]);
    const double err =
        std::sqrt((to_freq(traj.states[i].u).values - ref.u.values)
                      .squaredNorm() +
                  (to_freq(traj.states[i].v).values - ref.v.values)
                      .squaredNorm());
    if (err > 1e-8) return "dense vs closed form error " + std::to_string(err);
  }
  return std::nullopt;
}

std::optional<std::string> strang_vs_closed_form() {
  const TorusGrid g(1, 20.0, 32);
  const Generator gen(g, 2.0, DampingSpec{Constant{1.0}});
  const StatePair st = initial_state(g, 2.0, 7);
  EvolveOptions opt;
  opt.method = EvolveMethod::StrangSplit;
  opt.dt = 1e-2;
  opt.store_states = true;
  const Trajectory traj = evolve(gen, st, {1.0, 2.0}, opt);
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const StatePair ref =
        constant_damping_closed_form(1.0, 2.0, st, traj.times[i]);
    const double err =
        std::sqrt((traj.states[i].u.values - ref.u.values).squaredNorm() +
                  (traj.states[i].v.values - ref.v.values).squaredNorm());
    if (err > 1e-3) return "strang error " + std::to_string(err);
  }
  return std::nullopt;
}

std::optional<std::string> undamped_energy_conserved() {
  const TorusGrid g(1, 20.0, 32);
  const Generator gen(g, 1.0, DampingSpec{Constant{0.0}});
  const StatePair st = initial_state(g, 1.0, 3);
  EvolveOptions opt;
  opt.method = EvolveMethod::StrangSplit;
  opt.dt = 1e-2;
  const Trajectory traj = evolve(gen, st, {0.0, 1.0, 3.0}, opt);
  for (double e : traj.energies)
    if (std::abs(e - traj.energies[0]) > 1e-9 * traj.energies[0])
      return std::string("energy drift in the undamped flow");
  return std::nullopt;
}

std::optional<std::string> dissipation_identity() {
  const TorusGrid g(1, 20.0, 32);
  const Generator gen(g, 2.0, damping_preset("interval-gap", 1));
  const StatePair st = initial_state(g, 2.0, 11);
  EvolveOptions opt;
  opt.method = EvolveMethod::DenseExpm;
  opt.store_states = true;
  const double h = 0.01;
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(h * i);
  const Trajectory traj = evolve(gen, st, times, opt);
  for (size_t i = 0; i + 1 < times.size(); ++i) {
    const double lhs = (traj.energies[i + 1] - traj.energies[i]) / h;
    const double rhs = -0.5 * (dissipation_rate(gen, traj.states[i]) +
                               dissipation_rate(gen, traj.states[i + 1]));
    if (std::abs(lhs - rhs) > (h + 1e-6) * traj.energies[0])
      return "dissipation identity defect at step " + std::to_string(i);
  }
  return std::nullopt;
}

std::optional<std::string> skew_adjoint_identity() {
  const TorusGrid g(1, 15.0, 32);
  const Generator gen(g, 2.0, damping_preset("smooth-bumps", 1));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::VectorXcd z(2 * g.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
      z[i] = Complex(gauss(rng), gauss(rng));
    const double lambda = trial % 2 ? 1.0 : 5.0;
    const Eigen::VectorXcd Az = gen.apply_weighted(z, lambda);
    SpectralField v{g, Rep::Freq, z.tail(g.size())};
    SpectralField vs = to_space(v);
    double diss = 0.0;
    for (Eigen::Index k = 0; k < g.size(); ++k)
      diss += gen.damping_samples()[k] * std::norm(vs.values[k]);
    if (std::abs(std::real(Az.dot(z)) + diss) > 1e-10 * z.squaredNorm())
      return std::string("skew identity defect");
  }
  return std::nullopt;
}

std::optional<std::string> annihilation_brute_force() {
  const TorusGrid g(1, 12.0, 8);
  std::mt19937_64 rng(13);
  std::bernoulli_distribution coin(0.25);
  for (int trial = 0; trial < 10; ++trial) {
    SublevelMask s;
    s.grid = g;
    s.epsilon = 0.5;
    s.mask.assign(g.size(), 0);
    AnnulusSet sig;
    sig.grid = g;
    sig.lambda = 1.0;
    sig.s = 2.0;
    sig.mu = 0.5;
    sig.mask.assign(g.size(), 0);
    for (Eigen::Index k = 0; k < g.size(); ++k) {
      s.mask[k] = coin(rng) ? 1 : 0;
      sig.mask[k] = coin(rng) ? 1 : 0;
    }
    for (char c : sig.mask)
      if (c) ++sig.count;
    const AnnihilationResult r = annihilation_two_sided(s, sig);
    const double ref = oracle::sigma_min_normal(assemble_two_sided(s, sig));
    if (ref > 1e-6 &&
        std::abs(r.sigma_min - ref) > 1e-8 * std::max(ref, 1e-12))
      return "two-sided sigma mismatch " + std::to_string(r.sigma_min) +
             " vs " + std::to_string(ref);
  }
  return std::nullopt;
}

std::optional<std::string> one_sided_exact_constant() {
  const TorusGrid g(1, 12.0, 16);
  const Generator gen(g, 2.0, DampingSpec{Constant{0.25}});
  const AnnulusSet sig = annulus(2.0, 2.0, 1.0, g);
  const ResolventPoint p = annihilation_one_sided(gen, sig);
  return expect(std::abs(p.constant - 2.0) <= 1e-10,
                "constant(h=1/4) should be 2, got " +
                    std::to_string(p.constant));
}

std::optional<std::string> exponent_specializations() {
  if (std::abs(2.0 * exponent_q(2.0, 4.0, 0.0) - 2.0) > 1e-15)
    return std::string("q(2,4,0) defect");
  const StabilityClass at2 = extrapolate(StabilityClass::exponential(), 4.0, 2.0);
  if (at2.tag != StabilityTag::Polynomial ||
      std::abs(at2.rate - 0.5) > 1e-15)
    return std::string("exp@4 -> 1/2-poly@2 defect");
  const StabilityClass lg = extrapolate(StabilityClass::logarithmic(1.0), 2.0, 3.0);
  if (std::abs(lg.rate - 1.5) > 1e-15) return std::string("log transfer defect");
  return std::nullopt;
}

std::optional<std::string> golden_table_spotchecks() {
  Facts f;
  f.d = 1;
  f.s = 3.0;
  f.one = Tri::Holds;
  if (classify(f).cls.tag != StabilityTag::Exponential)
    return std::string("d=1 s=3 1-GCC should be exponential");
  Facts g;
  g.d = 2;
  g.s = 4.0;
  g.periodic_superset = Tri::Holds;
  g.one = Tri::Fails;
  if (classify(g).cls.tag != StabilityTag::Exponential)
    return std::string("periodic superset at s=4 should be exponential");
  return std::nullopt;
}

std::optional<std::string> ratefit_synthetics() {
  Trajectory ex;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.1 * i;
    ex.times.push_back(t);
    ex.energies.push_back(std::exp(-2.0 * t));
  }
  const FitReport r = select_model(ex);
  if (r.model != "exponential" || std::abs(r.rate - 1.0) > 1e-6)
    return std::string("exponential synthetic misfit");
  return std::nullopt;
}

std::optional<std::string> plot_determinism() {
  PlotSeries s;
  s.x = {0.0, 1.0};
  s.y = {1.0, 0.1};
  const std::string a = render_svg_plot("t", "x", "y", s, true);
  const std::string b = render_svg_plot("t", "x", "y", s, true);
  if (a != b) return std::string("plot bytes differ between renders");
  if (a.find("<svg") == std::string::npos) return std::string("not an svg");
  try {
    PlotSeries bad;
    bad.x = {0.0, 1.0};
    bad.y = {1.0, -1.0};
    render_svg_plot("t", "x", "y", bad, true);
    return std::string("negative log-scale value not rejected");
  } catch (const std::invalid_argument& e) {
    if (std::string(e.what()).find("index 1") == std::string::npos)
      return std::string("offending index not named: ") + e.what();
  }
  return std::nullopt;
}

std::optional<std::string> gcc_presets() {
  const TorusGrid g(2, 4.0, 8);
  SamplingPlan plan;
  plan.centers_per_axis = 12;
  plan.directions = 24;
  plan.quad_per_axis = 16;
  plan.segment_samples = 128;
  const DampingSpec balls = damping_preset("ball-lattice", 2);
  const Region omega = damped_region(balls, g, 0.5);
  if (check_d_gcc(omega, 1.0, g, plan).verdict != Verdict::Holds)
    return std::string("ball lattice should satisfy d-GCC");
  if (check_one_gcc(omega, 3.0, g, plan).verdict != Verdict::Fails)
    return std::string("ball lattice should fail 1-GCC");
  if (check_zero_gcc(DampingSpec{Constant{1.0}}, g, 0.5).verdict !=
      Verdict::Holds)
    return std::string("constant damping should satisfy 0-GCC");
  return std::nullopt;
}

}  // namespace

int run_selftest(std::ostream& os, bool verbose) {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"parseval_roundtrip", parseval_roundtrip},
      {"annulus_radii_vs_scan", annulus_radii_vs_scan},
      {"closed_form_vs_dense_expm", closed_form_vs_dense},
      {"strang_vs_closed_form", strang_vs_closed_form},
      {"undamped_energy_conserved", undamped_energy_conserved},
      {"dissipation_identity", dissipation_identity},
      {"skew_adjoint_identity", skew_adjoint_identity},
      {"annihilation_brute_force", annihilation_brute_force},
      {"one_sided_exact_constant", one_sided_exact_constant},
      {"exponent_specializations", exponent_specializations},
      {"golden_table_spotchecks", golden_table_spotchecks},
      {"ratefit_synthetics", ratefit_synthetics},
      {"plot_determinism", plot_determinism},
      {"gcc_presets", gcc_presets},
  };

  int failures = 0;
  for (const auto& [name, check] : checks) {
    std::optional<std::string> err;
    try {
      err = check();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    if (err) {
      ++failures;
      os << "FAIL " << name << ": " << *err << "\n";
    } else {
      os << "PASS " << name << "\n";
    }
    if (verbose) os.flush();
  }
  os << (failures == 0 ? "selftest: all checks passed\n"
                       : "selftest: " + std::to_string(failures) +
                             " check(s) failed\n");
  return failures;
}

}  // namespace dfkg
