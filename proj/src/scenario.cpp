#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

namespace dfkg {

std::string to_string(AnalysisKind k) {
  switch (k) {
    case AnalysisKind::Simulate: return "simulate";
    case AnalysisKind::ResolventSweep: return "resolvent_sweep";
    case AnalysisKind::Annihilation: return "annihilation";
    case AnalysisKind::GccCheck: return "gcc_check";
    case AnalysisKind::Classify: return "classify";
  }
  return "?";
}

namespace {

// Table walker that records consumed keys and rejects unknown ones with a
// suggestion.
class Schema {
 public:
  Schema(const ConfigValue& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_table())
      throw ConfigError("expected a table", node_.line, node_.col, path_);
  }

  const ConfigValue* optional(const std::string& key) {
    seen_.insert(key);
    return node_.find(key);
  }

  const ConfigValue& required(const std::string& key) {
    const ConfigValue* v = optional(key);
    if (!v)
      throw ConfigError("missing required key '" + key + "'", node_.line,
                        node_.col, path_);
    return *v;
  }

  std::string sub_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    std::vector<std::string> known(seen_.begin(), seen_.end());
    for (const auto& [key, value] : node_.as_table(path_)) {
      if (seen_.count(key)) continue;
      std::string msg = "unknown key '" + key + "'";
      const std::string hint = suggest_key(key, known);
      if (!hint.empty()) msg += "; did you mean '" + hint + "'?";
      throw ConfigError(msg, value.line, value.col, sub_path(key));
    }
  }

 private:
  const ConfigValue& node_;
  std::string path_;
  std::set<std::string> seen_;
};

double positive(const ConfigValue& v, const std::string& path) {
  const double x = v.as_double(path);
  if (!(x > 0.0))
    throw ConfigError("must be > 0", v.line, v.col, path);
  return x;
}

Point point_from(const ConfigValue& v, const std::string& path, int dim) {
  const auto& arr = v.as_array(path);
  if (static_cast<int>(arr.size()) != dim)
    throw ConfigError("expected " + std::to_string(dim) + " coordinates",
                      v.line, v.col, path);
  Point p{0.0, 0.0};
  for (int i = 0; i < dim; ++i) p[i] = arr[i].as_double(path);
  return p;
}

Shape shape_from(const ConfigValue& v, const std::string& path, int dim) {
  Schema s(v, path);
  const std::string type = s.required("type").as_string(s.sub_path("type"));
  if (type == "ball") {
    Ball b;
    b.center = point_from(s.required("center"), s.sub_path("center"), dim);
    b.radius = positive(s.required("radius"), s.sub_path("radius"));
    s.finish();
    return b;
  }
  if (type == "box") {
    Box b;
    b.lo = point_from(s.required("lo"), s.sub_path("lo"), dim);
    b.hi = point_from(s.required("hi"), s.sub_path("hi"), dim);
    for (int i = 0; i < dim; ++i)
      if (!(b.lo[i] < b.hi[i]))
        throw ConfigError("box needs lo < hi per axis", v.line, v.col, path);
    s.finish();
    return b;
  }
  throw ConfigError("unknown shape type '" + type + "' (ball or box)", v.line,
                    v.col, path);
}

std::vector<Shape> shapes_from(const ConfigValue& v, const std::string& path,
                               int dim) {
  std::vector<Shape> out;
  for (const ConfigValue& item : v.as_array(path))
    out.push_back(shape_from(item, path + "[]", dim));
  if (out.empty())
    throw ConfigError("needs at least one shape", v.line, v.col, path);
  return out;
}

DampingSpec damping_from(const ConfigValue& v, int dim, std::string& desc) {
  Schema s(v, "damping");
  const std::string kind = s.required("kind").as_string("damping.kind");
  if (kind == "preset") {
    const std::string name = s.required("name").as_string("damping.name");
    s.finish();
    desc = "preset:" + name;
    return damping_preset(name, dim);
  }
  if (kind == "constant") {
    const ConfigValue& lv = s.required("level");
    const double level = lv.as_double("damping.level");
    if (level < 0.0)
      throw ConfigError("must be >= 0", lv.line, lv.col, "damping.level");
    s.finish();
    desc = "constant(" + std::to_string(level) + ")";
    return DampingSpec{Constant{level}};
  }
  if (kind == "indicator_complement") {
    IndicatorComplement ic;
    ic.level = positive(s.required("level"), "damping.level");
    ic.shapes = shapes_from(s.required("shapes"), "damping.shapes", dim);
    s.finish();
    desc = "indicator_complement(" + std::to_string(ic.shapes.size()) +
           " shapes)";
    return DampingSpec{ic};
  }
  if (kind == "periodic_pattern") {
    PeriodicPattern pp;
    pp.cell = positive(s.required("cell"), "damping.cell");
    pp.level = positive(s.required("level"), "damping.level");
    pp.shapes = shapes_from(s.required("shapes"), "damping.shapes", dim);
    s.finish();
    desc = "periodic_pattern(cell=" + std::to_string(pp.cell) + ")";
    return DampingSpec{pp};
  }
  if (kind == "smooth_bump") {
    SmoothBump sb;
    sb.base = positive(s.required("base"), "damping.base");
    for (const ConfigValue& dip :
         s.required("dips").as_array("damping.dips")) {
      Schema ds(dip, "damping.dips[]");
      Ball b;
      b.center =
          point_from(ds.required("center"), "damping.dips[].center", dim);
      b.radius = positive(ds.required("radius"), "damping.dips[].radius");
      ds.finish();
      sb.dips.push_back(b);
    }
    if (sb.dips.empty())
      throw ConfigError("needs at least one dip", v.line, v.col,
                        "damping.dips");
    s.finish();
    desc = "smooth_bump(" + std::to_string(sb.dips.size()) + " dips)";
    return DampingSpec{sb};
  }
  throw ConfigError(
      "unknown damping kind '" + kind +
          "' (preset, constant, indicator_complement, periodic_pattern, "
          "smooth_bump)",
      v.line, v.col, "damping.kind");
}

AnalysisKind analysis_from(const ConfigValue& v, const std::string& path) {
  const std::string name = v.as_string(path);
  if (name == "simulate") return AnalysisKind::Simulate;
  if (name == "resolvent_sweep") return AnalysisKind::ResolventSweep;
  if (name == "annihilation") return AnalysisKind::Annihilation;
  if (name == "gcc_check") return AnalysisKind::GccCheck;
  if (name == "classify") return AnalysisKind::Classify;
  std::string msg = "unknown analysis '" + name + "'";
  const std::string hint =
      suggest_key(name, {"simulate", "resolvent_sweep", "annihilation",
                         "gcc_check", "classify"});
  if (!hint.empty()) msg += "; did you mean '" + hint + "'?";
  throw ConfigError(msg, v.line, v.col, path);
}

}  // namespace

Scenario scenario_from_config(const ConfigValue& root,
                              const std::string& default_name) {
  Scenario sc;
  Schema top(root, "");

  if (const ConfigValue* v = top.optional("name"))
    sc.name = v->as_string("name");
  else
    sc.name = default_name;
  if (sc.name.empty()) throw ConfigError("name must not be empty");

  {
    const ConfigValue& gv = top.required("grid");
    Schema gs(gv, "grid");
    const long long d = gs.required("d").as_int("grid.d");
    if (d != 1 && d != 2)
      throw ConfigError("d must be 1 or 2", gv.line, gv.col, "grid.d");
    sc.d = static_cast<int>(d);
    sc.L = positive(gs.required("L"), "grid.L");
    const ConfigValue& nv = gs.required("N");
    const long long n = nv.as_int("grid.N");
    if (n < 4 || (n & (n - 1)) != 0)
      throw ConfigError("N must be a power of two, >= 4", nv.line, nv.col,
                        "grid.N");
    sc.N = static_cast<int>(n);
    gs.finish();
  }

  {
    const ConfigValue& sv = top.required("s");
    sc.s_values.clear();
    if (sv.is_array()) {
      for (const ConfigValue& item : sv.as_array("s"))
        sc.s_values.push_back(positive(item, "s"));
    } else {
      sc.s_values.push_back(positive(sv, "s"));
    }
    if (sc.s_values.empty())
      throw ConfigError("s list must not be empty", sv.line, sv.col, "s");
  }

  sc.damping = damping_from(top.required("damping"), sc.d, sc.damping_desc);
  if (sc.damping.is_periodic()) {
    const double ratio = sc.L / sc.damping.period();
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
      throw ConfigError(
          "periodic damping requires L to be an integer multiple of the cell",
          0, 0, "damping.cell");
  }

  {
    const ConfigValue& av = top.required("analyses");
    sc.analyses.clear();
    for (const ConfigValue& item : av.as_array("analyses"))
      sc.analyses.push_back(analysis_from(item, "analyses"));
    if (sc.analyses.empty())
      throw ConfigError("analyses must not be empty", av.line, av.col,
                        "analyses");
    std::set<AnalysisKind> dedup(sc.analyses.begin(), sc.analyses.end());
    if (dedup.size() != sc.analyses.size())
      throw ConfigError("analyses must not repeat", av.line, av.col,
                        "analyses");
  }

  if (const ConfigValue* v = top.optional("simulate")) {
    Schema s(*v, "simulate");
    if (const ConfigValue* t = s.optional("T"))
      sc.simulate.T = positive(*t, "simulate.T");
    if (const ConfigValue* t = s.optional("samples")) {
      sc.simulate.samples = static_cast<int>(t->as_int("simulate.samples"));
      if (sc.simulate.samples < 2)
        throw ConfigError("needs >= 2 samples", t->line, t->col,
                          "simulate.samples");
    }
    if (const ConfigValue* t = s.optional("method")) {
      const std::string m = t->as_string("simulate.method");
      if (m == "dense_expm") {
        sc.simulate.method = EvolveMethod::DenseExpm;
      } else if (m == "strang_split") {
        sc.simulate.method = EvolveMethod::StrangSplit;
      } else {
        throw ConfigError("method is dense_expm or strang_split", t->line,
                          t->col, "simulate.method");
      }
    }
    if (const ConfigValue* t = s.optional("dt"))
      sc.simulate.dt = positive(*t, "simulate.dt");
    if (const ConfigValue* t = s.optional("smooth"))
      sc.simulate.smooth = t->as_bool("simulate.smooth");
    s.finish();
  }

  if (const ConfigValue* v = top.optional("resolvent_sweep")) {
    Schema s(*v, "resolvent_sweep");
    if (const ConfigValue* t = s.optional("kind")) {
      const std::string k = t->as_string("resolvent_sweep.kind");
      if (k == "full_A") sc.sweep.kind = OperatorKind::FullA;
      else if (k == "halfwave") sc.sweep.kind = OperatorKind::Halfwave;
      else if (k == "one_sided") sc.sweep.kind = OperatorKind::OneSided;
      else if (k == "two_sided") sc.sweep.kind = OperatorKind::TwoSided;
      else
        throw ConfigError(
            "kind is full_A, halfwave, one_sided or two_sided", t->line,
            t->col, "resolvent_sweep.kind");
    }
    if (const ConfigValue* t = s.optional("lambda_max"))
      sc.sweep.lambda_max = positive(*t, "resolvent_sweep.lambda_max");
    if (const ConfigValue* t = s.optional("points")) {
      sc.sweep.points = static_cast<int>(t->as_int("resolvent_sweep.points"));
      if (sc.sweep.points < 2)
        throw ConfigError("needs >= 2 points", t->line, t->col,
                          "resolvent_sweep.points");
    }
    if (const ConfigValue* t = s.optional("mu"))
      sc.sweep.mu = positive(*t, "resolvent_sweep.mu");
    if (const ConfigValue* t = s.optional("epsilon"))
      sc.sweep.epsilon = positive(*t, "resolvent_sweep.epsilon");
    s.finish();
  }

  if (const ConfigValue* v = top.optional("annihilation")) {
    Schema s(*v, "annihilation");
    if (const ConfigValue* t = s.optional("lambda")) {
      sc.annihilation.lambda = t->as_double("annihilation.lambda");
      if (sc.annihilation.lambda < 0.0)
        throw ConfigError("lambda must be >= 0", t->line, t->col,
                          "annihilation.lambda");
    }
    if (const ConfigValue* t = s.optional("mu"))
      sc.annihilation.mu = positive(*t, "annihilation.mu");
    if (const ConfigValue* t = s.optional("epsilon"))
      sc.annihilation.epsilon = positive(*t, "annihilation.epsilon");
    s.finish();
  }

  if (const ConfigValue* v = top.optional("gcc_check")) {
    Schema s(*v, "gcc_check");
    if (const ConfigValue* t = s.optional("epsilon"))
      sc.gcc.epsilon = positive(*t, "gcc_check.epsilon");
    if (const ConfigValue* t = s.optional("r"))
      sc.gcc.r = positive(*t, "gcc_check.r");
    if (const ConfigValue* t = s.optional("ell"))
      sc.gcc.ell = positive(*t, "gcc_check.ell");
    auto plan_int = [&](const char* key, int& slot) {
      if (const ConfigValue* t = s.optional(key)) {
        const long long n = t->as_int(std::string("gcc_check.") + key);
        if (n < 2)
          throw ConfigError("needs >= 2", t->line, t->col,
                            std::string("gcc_check.") + key);
        slot = static_cast<int>(n);
      }
    };
    plan_int("centers_per_axis", sc.gcc.plan.centers_per_axis);
    plan_int("directions", sc.gcc.plan.directions);
    plan_int("quad_per_axis", sc.gcc.plan.quad_per_axis);
    plan_int("segment_samples", sc.gcc.plan.segment_samples);
    s.finish();
  }

  if (const ConfigValue* v = top.optional("classify")) {
    Schema s(*v, "classify");
    if (const ConfigValue* t = s.optional("epsilon"))
      sc.classify_params.epsilon = positive(*t, "classify.epsilon");
    auto flag = [&](const char* key, std::optional<bool>& slot) {
      if (const ConfigValue* t = s.optional(key))
        slot = t->as_bool(std::string("classify.") + key);
    };
    flag("uniformly_continuous", sc.classify_params.uniformly_continuous);
    flag("continuous", sc.classify_params.continuous);
    flag("finite_measure_sublevel",
         sc.classify_params.finite_measure_sublevel);
    flag("periodic_superset", sc.classify_params.periodic_superset);
    s.finish();
  }

  if (const ConfigValue* v = top.optional("seed"))
    sc.seed = static_cast<std::uint64_t>(v->as_int("seed"));
  if (const ConfigValue* v = top.optional("workers")) {
    const long long w = v->as_int("workers");
    if (w < 0) throw ConfigError("workers must be >= 0", v->line, v->col,
                                 "workers");
    sc.workers = static_cast<int>(w);
  }
  if (const ConfigValue* v = top.optional("output_dir"))
    sc.output_dir = v->as_string("output_dir");
  if (sc.output_dir.empty()) sc.output_dir = "out/" + sc.name;

  top.finish();

  // cross-checks that need several fields at once
  if (std::find(sc.analyses.begin(), sc.analyses.end(),
                AnalysisKind::Simulate) != sc.analyses.end()) {
    const Eigen::Index unknowns = 2 * sc.grid().size();
    if (sc.simulate.method == EvolveMethod::DenseExpm && unknowns > 4096)
      throw ConfigError(
          "dense_expm needs 2*N^d <= 4096; use strang_split for this grid",
          0, 0, "simulate.method");
  }
  const bool needs_gcc =
      std::find(sc.analyses.begin(), sc.analyses.end(),
                AnalysisKind::GccCheck) != sc.analyses.end() ||
      std::find(sc.analyses.begin(), sc.analyses.end(),
                AnalysisKind::Classify) != sc.analyses.end();
  if (needs_gcc && sc.gcc.r > sc.L / 2.0)
    throw ConfigError("gcc_check.r larger than half the box", 0, 0,
                      "gcc_check.r");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  const ConfigValue root = parse_config_file(path);
  return scenario_from_config(root,
                              std::filesystem::path(path).stem().string());
}

Scenario parse_scenario_text(const std::string& text,
                             const std::string& name) {
  return scenario_from_config(parse_config_text(text), name);
}

}  // namespace dfkg
