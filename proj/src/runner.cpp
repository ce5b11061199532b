#include "runner.hpp"

#include "parallel.hpp"
#include "plot.hpp"
#include "ratefit.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

namespace dfkg {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string s_label(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", s);
  return buf;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& body,
                     std::vector<std::string>& files) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write '" + path.string() + "'");
  out << body;
  files.push_back(path.string());
}

ordered_json rate_value(double value, const char* convention) {
  return ordered_json{{"value", value}, {"convention", convention}};
}

ordered_json fit_to_json(const FitReport& f) {
  ordered_json j;
  j["model"] = f.model;
  j["rate"] = rate_value(f.rate, "semigroup-rate");
  j["energy_slope"] = rate_value(f.energy_slope, "energy-axis-slope");
  j["prefactor"] = f.prefactor;
  j["residual_rms"] = f.residual;
  j["window"] = {f.t_lo, f.t_hi};
  j["tie_break"] = f.tie_break;
  j["no_decay"] = f.no_decay;
  j["note"] = f.conversion_note;
  return j;
}

ordered_json gcc_to_json(const GccReport& r) {
  ordered_json j;
  j["kind"] = to_string(r.kind);
  j["verdict"] = to_string(r.verdict);
  j["parameter"] = r.parameter;
  j["infimum_estimate"] = r.infimum_estimate;
  j["tolerance"] = r.tolerance;
  j["sample_count"] = r.sample_count;
  j["witness_center"] = {r.witness_center[0], r.witness_center[1]};
  if (r.kind == GccKind::One)
    j["witness_direction"] = {r.witness_direction[0], r.witness_direction[1]};
  j["boundary_witness"] = r.boundary_witness;
  return j;
}

ordered_json class_to_json(const StabilityClass& c) {
  ordered_json j;
  j["tag"] = to_string(c.tag);
  if (c.tag == StabilityTag::Polynomial || c.tag == StabilityTag::Logarithmic)
    j["rate"] = rate_value(c.rate, "semigroup-rate");
  if (c.tag == StabilityTag::Exponential && c.omega > 0.0) {
    j["M"] = c.M;
    j["omega"] = rate_value(c.omega, "semigroup-rate");
  }
  j["provenance"] = c.provenance;
  return j;
}

Tri tri_from(std::optional<bool> override_value, Tri derived) {
  if (override_value.has_value())
    return *override_value ? Tri::Holds : Tri::Fails;
  return derived;
}

// Structural features read off the damping description. GridSampled
// coefficients expose nothing; numeric checks still apply.
struct StructuralFacts {
  Tri finite_measure = Tri::Unknown;
  Tri periodic_superset = Tri::Unknown;
  Tri uniformly_continuous = Tri::Unknown;
  Tri continuous = Tri::Unknown;
};

StructuralFacts structural_facts(const DampingSpec& spec, double epsilon) {
  StructuralFacts f;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Constant>) {
          f.uniformly_continuous = Tri::Holds;
          f.continuous = Tri::Holds;
          if (v.a0 >= epsilon) {
            // empty sublevel set
            f.finite_measure = Tri::Holds;
            f.periodic_superset = Tri::Holds;
          } else {
            f.finite_measure = Tri::Fails;
            f.periodic_superset = Tri::Fails;
          }
        } else if constexpr (std::is_same_v<T, IndicatorComplement>) {
          f.continuous = Tri::Fails;
          f.uniformly_continuous = Tri::Fails;
          if (epsilon <= v.level) {
            // sublevel = bounded shape union
            f.finite_measure = Tri::Holds;
            f.periodic_superset = Tri::Holds;
          } else {
            f.finite_measure = Tri::Fails;
            f.periodic_superset = Tri::Fails;
          }
        } else if constexpr (std::is_same_v<T, PeriodicPattern>) {
          f.continuous = Tri::Fails;
          f.uniformly_continuous = Tri::Fails;
          if (epsilon <= v.level) {
            f.periodic_superset = Tri::Holds;  // complement of the pattern
            f.finite_measure = Tri::Fails;
          } else {
            f.periodic_superset = Tri::Fails;
            f.finite_measure = Tri::Fails;
          }
        } else if constexpr (std::is_same_v<T, SmoothBump>) {
          f.uniformly_continuous = Tri::Holds;
          f.continuous = Tri::Holds;
          if (epsilon < v.base) {
            // dips are isolated balls
            f.finite_measure = Tri::Holds;
            f.periodic_superset = Tri::Holds;
          } else {
            f.finite_measure = Tri::Fails;
            f.periodic_superset = Tri::Fails;
          }
        } else {
          (void)v;  // GridSampled: nothing structural
        }
      },
      spec.variant);
  return f;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string csv = "t,energy\n";
  for (size_t i = 0; i < traj.times.size(); ++i)
    csv += fmt17(traj.times[i]) + "," + fmt17(traj.energies[i]) + "\n";
  return csv;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string csv = "lambda,sigma_min,constant\n";
  for (const ResolventPoint& p : sweep.points)
    csv += fmt17(p.lambda) + "," + fmt17(p.sigma_min) + "," +
           fmt17(p.constant) + "\n";
  return csv;
}

int class_rank(StabilityTag t) { return static_cast<int>(t); }

int fitted_rank(const std::string& model) {
  if (model == "exponential") return class_rank(StabilityTag::Exponential);
  if (model == "polynomial") return class_rank(StabilityTag::Polynomial);
  if (model == "logarithmic") return class_rank(StabilityTag::Logarithmic);
  return 0;
}

}  // namespace

StatePair initial_state(const TorusGrid& grid, double s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField u{grid, Rep::Freq, Eigen::VectorXcd(grid.size())};
  SpectralField v{grid, Rep::Freq, Eigen::VectorXcd(grid.size())};
  const double decay = (grid.dim() + 1.0) / 2.0;
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const double w = std::pow(1.0 + grid.freq_sq(k), -decay);
    u.values[k] = w * Complex(gauss(rng), gauss(rng));
    v.values[k] = w * Complex(gauss(rng), gauss(rng));
  }
  StatePair st{u, v};
  const double e = std::sqrt(energy(st, s));
  st.u.values /= e;
  st.v.values /= e;
  return st;
}

RunReport run_scenario(const Scenario& sc) {
  namespace fs = std::filesystem;
  RunReport out;
  const fs::path dir(sc.output_dir);
  fs::create_directories(dir);

  ordered_json report;
  report["schema_version"] = 1;
  report["tool"] = {{"name", "dfkg-lab"}, {"version", "1.0.0"}};

  // inputs echo
  {
    ordered_json in;
    in["name"] = sc.name;
    in["grid"] = {{"d", sc.d}, {"L", sc.L}, {"N", sc.N}};
    in["s"] = sc.s_values;
    in["damping"] = sc.damping_desc;
    in["damping_bound"] = sc.damping.bound();
    ordered_json names = ordered_json::array();
    for (AnalysisKind k : sc.analyses) names.push_back(to_string(k));
    in["analyses"] = names;
    in["seed"] = sc.seed;
    in["workers"] = sc.workers;
    in["output_dir"] = sc.output_dir;
    report["scenario"] = in;
  }

  const TorusGrid grid = sc.grid();
  ordered_json analyses = ordered_json::object();
  ordered_json warnings = ordered_json::array();
  bool all_ok = true;

  auto has = [&](AnalysisKind k) {
    return std::find(sc.analyses.begin(), sc.analyses.end(), k) !=
           sc.analyses.end();
  };

  // per-s results reused by the conformance comparison
  std::map<double, FitReport> fitted;
  std::map<double, ClassifyResult> predicted;
  std::map<double, AnnihilationResult> annihilated;
  std::map<double, double> sweep_sup;

  if (has(AnalysisKind::Simulate)) {
    ordered_json j;
    try {
      ordered_json per_s = ordered_json::array();
      for (double s : sc.s_values) {
        const Generator gen(grid, s, sc.damping);
        const StatePair st0 = initial_state(grid, s, sc.seed);
        EvolveOptions opt;
        opt.method = sc.simulate.method;
        opt.dt = sc.simulate.dt;
        const Trajectory traj = decay_curve(gen, st0, sc.simulate.T,
                                            sc.simulate.samples,
                                            sc.simulate.smooth, opt);
        const std::string stem = "trajectory_s" + s_label(s);
        write_text_file(dir / (stem + ".csv"), trajectory_csv(traj),
                        out.files_written);
        PlotSeries series{traj.times, traj.energies};
        write_svg_plot((dir / (stem + ".svg")).string(),
                       sc.name + ": energy decay (s=" + s_label(s) + ")",
                       "t", "E(t)", series, true);
        out.files_written.push_back((dir / (stem + ".svg")).string());

        const FitReport fe = fit_exponential(traj);
        const FitReport fp = fit_polynomial(traj);
        const FitReport fl = fit_logarithmic(traj);
        const FitReport sel = select_model(traj);
        fitted.emplace(s, sel);

        if (sel.model == "logarithmic" && sc.simulate.T < 1e3)
          warnings.push_back(
              "logarithmic fit selected at s=" + s_label(s) +
              " but T < 1e3; log-scale separation is unreliable");

        ordered_json js;
        js["s"] = s;
        js["method"] = traj.method_tag;
        js["dt"] = traj.dt;
        js["smooth_probe"] = traj.smooth_probe;
        js["samples"] = traj.times.size();
        js["energy_initial"] = traj.energies.front();
        js["energy_final"] = traj.energies.back();
        js["trajectory_csv"] = stem + ".csv";
        js["plot_svg"] = stem + ".svg";
        js["fits"] = {{"exponential", fit_to_json(fe)},
                      {"polynomial", fit_to_json(fp)},
                      {"logarithmic", fit_to_json(fl)}};
        js["selected"] = fit_to_json(sel);
        per_s.push_back(js);
      }
      j["completed"] = true;
      j["per_s"] = per_s;
    } catch (const std::exception& e) {
      j["completed"] = false;
      j["error"] = e.what();
      all_ok = false;
    }
    analyses["simulate"] = j;
  }

  if (has(AnalysisKind::ResolventSweep)) {
    ordered_json j;
    try {
      ordered_json per_s = ordered_json::array();
      for (double s : sc.s_values) {
        SweepSpec spec;
        spec.kind = sc.sweep.kind;
        spec.s = s;
        spec.damping = sc.damping;
        spec.mu = sc.sweep.mu;
        spec.epsilon = sc.sweep.epsilon;
        const SweepResult sweep = lambda_sweep(grid, spec, sc.sweep.lambda_max,
                                               sc.sweep.points, sc.workers);
        sweep_sup[s] = sweep.sup_constant;
        const std::string stem = "sweep_s" + s_label(s);
        write_text_file(dir / (stem + ".csv"), sweep_csv(sweep),
                        out.files_written);
        PlotSeries series;
        for (const ResolventPoint& p : sweep.points) {
          if (p.empty_sigma || !std::isfinite(p.constant)) continue;
          series.x.push_back(p.lambda);
          series.y.push_back(p.constant);
        }
        if (!series.x.empty()) {
          write_svg_plot((dir / (stem + ".svg")).string(),
                         sc.name + ": resolvent constant (s=" + s_label(s) +
                             ", " + to_string(spec.kind) + ")",
                         "lambda", "constant", series, false);
          out.files_written.push_back((dir / (stem + ".svg")).string());
        }
        ordered_json js;
        js["s"] = s;
        js["kind"] = to_string(spec.kind);
        js["lambda_max"] = sc.sweep.lambda_max;
        js["points"] = sc.sweep.points;
        js["sup_constant"] = sweep.sup_constant;
        js["argmax_lambda"] = sweep.argmax_lambda;
        js["tail_checked"] = sweep.tail_checked;
        js["tail_monotone"] = sweep.tail_monotone;
        js["csv"] = stem + ".csv";
        js["note"] =
            "sup over the sampled window only; the uniform-in-lambda "
            "quantifier is not certified by a truncated sweep";
        per_s.push_back(js);
      }
      j["completed"] = true;
      j["per_s"] = per_s;
    } catch (const std::exception& e) {
      j["completed"] = false;
      j["error"] = e.what();
      all_ok = false;
    }
    analyses["resolvent_sweep"] = j;
  }

  if (has(AnalysisKind::Annihilation)) {
    ordered_json j;
    try {
      ordered_json per_s = ordered_json::array();
      const SublevelMask smask =
          sublevel_mask(sc.damping, grid, sc.annihilation.epsilon);
      for (double s : sc.s_values) {
        const AnnulusSet sigma =
            annulus(sc.annihilation.lambda, s, sc.annihilation.mu, grid);
        ordered_json js;
        js["s"] = s;
        js["lambda"] = sc.annihilation.lambda;
        js["mu"] = sc.annihilation.mu;
        js["epsilon"] = sc.annihilation.epsilon;
        js["sigma_modes"] = sigma.count;
        js["s_nodes"] = smask.count;
        js["sigma_outer_exceeds_grid"] = sigma.outer_exceeds_grid;
        const AnnihilationResult two = annihilation_two_sided(smask, sigma);
        annihilated.emplace(s, two);
        js["two_sided"] = {
            {"sigma_min", two.sigma_min},
            {"combined_constant", two.combined_constant},
            {"sum_form_bounds", {two.sum_lo, two.sum_hi}},
            {"note",
             "sharp sum-form constant lies between combined/sqrt(2) and "
             "combined"}};
        if (sigma.count > 0) {
          const Generator gen(grid, s, sc.damping);
          const ResolventPoint one = annihilation_one_sided(gen, sigma);
          js["one_sided"] = {{"sigma_min", one.sigma_min},
                             {"constant", one.constant}};
        } else {
          js["one_sided"] = nullptr;
          js["empty_sigma"] = true;
        }
        per_s.push_back(js);
      }
      j["completed"] = true;
      j["per_s"] = per_s;
    } catch (const std::exception& e) {
      j["completed"] = false;
      j["error"] = e.what();
      all_ok = false;
    }
    analyses["annihilation"] = j;
  }

  std::optional<GccReport> zero_rep, one_rep, dim_rep;
  if (has(AnalysisKind::GccCheck) || has(AnalysisKind::Classify)) {
    const double eps = has(AnalysisKind::GccCheck)
                           ? sc.gcc.epsilon
                           : sc.classify_params.epsilon;
    ordered_json j;
    try {
      const Region omega = damped_region(sc.damping, grid, eps);
      zero_rep = check_zero_gcc(sc.damping, grid, eps);
      dim_rep = check_d_gcc(omega, sc.gcc.r, grid, sc.gcc.plan);
      one_rep = check_one_gcc(omega, sc.gcc.ell, grid, sc.gcc.plan);
      j["completed"] = true;
      j["epsilon"] = eps;
      j["zero"] = gcc_to_json(*zero_rep);
      j["one"] = gcc_to_json(*one_rep);
      j["d"] = gcc_to_json(*dim_rep);
    } catch (const std::exception& e) {
      j["completed"] = false;
      j["error"] = e.what();
      all_ok = false;
    }
    if (has(AnalysisKind::GccCheck)) analyses["gcc_check"] = j;
  }

  if (has(AnalysisKind::Classify)) {
    ordered_json j;
    try {
      const StructuralFacts sf =
          structural_facts(sc.damping, sc.classify_params.epsilon);
      auto tri_of = [](const std::optional<GccReport>& r) {
        if (!r) return Tri::Unknown;
        switch (r->verdict) {
          case Verdict::Holds: return Tri::Holds;
          case Verdict::Fails: return Tri::Fails;
          default: return Tri::Unknown;
        }
      };
      ordered_json per_s = ordered_json::array();
      for (double s : sc.s_values) {
        Facts facts;
        facts.d = sc.d;
        facts.s = s;
        facts.zero = tri_of(zero_rep);
        facts.one = tri_of(one_rep);
        facts.dd = tri_of(dim_rep);
        facts.finite_measure_sublevel =
            tri_from(sc.classify_params.finite_measure_sublevel,
                     sf.finite_measure);
        facts.periodic_superset = tri_from(
            sc.classify_params.periodic_superset, sf.periodic_superset);
        facts.uniformly_continuous = tri_from(
            sc.classify_params.uniformly_continuous, sf.uniformly_continuous);
        facts.continuous =
            tri_from(sc.classify_params.continuous, sf.continuous);

        const ClassifyResult res = classify(facts);
        predicted.emplace(s, res);
        ordered_json js;
        js["s"] = s;
        js["facts"] = {
            {"zero", to_string(facts.zero)},
            {"one", to_string(facts.one)},
            {"d", to_string(facts.dd)},
            {"finite_measure_sublevel",
             to_string(facts.finite_measure_sublevel)},
            {"periodic_superset", to_string(facts.periodic_superset)},
            {"uniformly_continuous", to_string(facts.uniformly_continuous)},
            {"continuous", to_string(facts.continuous)}};
        js["class"] = class_to_json(res.cls);
        js["negatives"] = res.negatives;
        js["notes"] = res.notes;
        per_s.push_back(js);
      }
      j["completed"] = true;
      j["epsilon"] = sc.classify_params.epsilon;
      j["per_s"] = per_s;
    } catch (const std::exception& e) {
      j["completed"] = false;
      j["error"] = e.what();
      all_ok = false;
    }
    analyses["classify"] = j;
  }

  report["analyses"] = analyses;

  // constant-ledger chains from measured quantities
  {
    ordered_json chains = ordered_json::object();
    for (double s : sc.s_values) {
      ordered_json entry = ordered_json::object();
      bool any = false;
      if (auto it = annihilated.find(s);
          it != annihilated.end() &&
          std::isfinite(it->second.combined_constant)) {
        ConstantLedger led;
        led.set("C0", it->second.combined_constant,
                "measured two-sided combined constant at the sampled lambda");
        led.set("eps0", sc.annihilation.epsilon);
        led.set("mu0", sc.annihilation.mu);
        led.set("a_inf", sc.damping.bound());
        apply_chain_rule(led, "annihilation_to_full");
        apply_chain_rule(led, "annihilation_to_decay");
        ordered_json lj = ordered_json::object();
        for (const auto& [name, e] : led.entries())
          lj[name] = {{"value", e.value}, {"formula", e.formula}};
        entry["from_annihilation"] = lj;
        entry["note"] =
            "chains use the constant measured at one lambda; the theorems "
            "quantify over all lambda";
        any = true;
      }
      if (auto it = sweep_sup.find(s);
          it != sweep_sup.end() && sc.sweep.kind == OperatorKind::FullA &&
          std::isfinite(it->second) && it->second > 0.0) {
        ConstantLedger led;
        led.set("C0", it->second, "sup of the sampled resolvent sweep");
        apply_chain_rule(led, "resolvent_to_stability");
        ordered_json lj = ordered_json::object();
        for (const auto& [name, e] : led.entries())
          lj[name] = {{"value", e.value}, {"formula", e.formula}};
        entry["from_resolvent_sweep"] = lj;
        any = true;
      }
      if (any) chains[s_label(s)] = entry;
    }
    report["constant_ledger"] = chains;
  }

  // conformance: fitted class vs predicted class
  {
    ordered_json conf = ordered_json::array();
    for (double s : sc.s_values) {
      const auto fit_it = fitted.find(s);
      const auto pred_it = predicted.find(s);
      ordered_json c;
      c["s"] = s;
      if (fit_it == fitted.end() || pred_it == predicted.end() ||
          pred_it->second.cls.tag == StabilityTag::Unknown) {
        c["verdict"] = "incomparable";
      } else {
        const int fr = fitted_rank(fit_it->second.model);
        const int pr = class_rank(pred_it->second.cls.tag);
        c["fitted"] = fit_it->second.model;
        c["predicted"] = to_string(pred_it->second.cls.tag);
        c["verdict"] = fr >= pr ? "consistent" : "inconsistent";
      }
      conf.push_back(c);
    }
    report["conformance"] = conf;
  }

  report["warnings"] = warnings;
  report["all_completed"] = all_ok;

  out.json = report.dump(2) + "\n";
  out.all_completed = all_ok;
  const fs::path rp = dir / "report.json";
  write_text_file(rp, out.json, out.files_written);
  out.report_path = rp.string();
  return out;
}

}  // namespace dfkg
