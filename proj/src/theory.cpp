#include "theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dfkg {

std::string to_string(StabilityTag t) {
  switch (t) {
    case StabilityTag::Unknown: return "unknown";
    case StabilityTag::SmallO: return "o(1)";
    case StabilityTag::Logarithmic: return "logarithmic";
    case StabilityTag::Polynomial: return "polynomial";
    case StabilityTag::Exponential: return "exponential";
  }
  return "?";
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Unknown: return "unknown";
    case Tri::Holds: return "holds";
    case Tri::Fails: return "fails";
  }
  return "?";
}

StabilityClass StabilityClass::exponential(std::vector<std::string> prov,
                                           double M, double omega) {
  return StabilityClass{StabilityTag::Exponential, 0.0, M, omega,
                        std::move(prov)};
}

StabilityClass StabilityClass::polynomial(double rate,
                                          std::vector<std::string> prov) {
  if (!(rate > 0.0))
    throw std::invalid_argument("StabilityClass: polynomial rate must be > 0");
  return StabilityClass{StabilityTag::Polynomial, rate, 0.0, 0.0,
                        std::move(prov)};
}

StabilityClass StabilityClass::logarithmic(double rate,
                                           std::vector<std::string> prov) {
  if (!(rate > 0.0))
    throw std::invalid_argument("StabilityClass: logarithmic rate must be > 0");
  return StabilityClass{StabilityTag::Logarithmic, rate, 0.0, 0.0,
                        std::move(prov)};
}

StabilityClass StabilityClass::small_o(std::vector<std::string> prov) {
  return StabilityClass{StabilityTag::SmallO, 0.0, 0.0, 0.0, std::move(prov)};
}

StabilityClass StabilityClass::unknown() { return StabilityClass{}; }

bool stronger_or_equal(const StabilityClass& a, const StabilityClass& b) {
  if (a.tag != b.tag) return static_cast<int>(a.tag) > static_cast<int>(b.tag);
  if (a.tag == StabilityTag::Polynomial || a.tag == StabilityTag::Logarithmic)
    return a.rate >= b.rate - 1e-15 * std::abs(b.rate);
  return true;
}

namespace {

Tri merge(Tri current, Tri incoming, const char* what) {
  if (incoming == Tri::Unknown) return current;
  if (current == Tri::Unknown) return incoming;
  if (current != incoming)
    throw std::invalid_argument(std::string("facts: contradictory ") + what);
  return current;
}

}  // namespace

Facts complete_facts(const Facts& f) {
  if (f.d != 1 && f.d != 2) {
    // The tables cover d >= 2 uniformly; anything above 2 behaves like 2
    // for every rule encoded here, but the artifact's grids stop at 2.
    if (f.d < 1) throw std::invalid_argument("facts: d must be >= 1");
  }
  if (!(f.s > 0.0)) throw std::invalid_argument("facts: s must be > 0");

  Facts g = f;
  if (g.uniformly_continuous == Tri::Holds)
    g.continuous = merge(g.continuous, Tri::Holds, "continuity");

  // In one dimension segments and balls coincide.
  if (g.d == 1) {
    g.one = merge(g.one, g.dd, "1-GCC/d-GCC (d=1)");
    g.dd = g.one;
  }

  // Structural hypotheses force d-GCC of the damped region.
  if (g.finite_measure_sublevel == Tri::Holds) {
    g.dd = merge(g.dd, Tri::Holds, "d-GCC vs finite-measure sublevel");
    if (g.d == 1) g.one = merge(g.one, Tri::Holds, "1-GCC vs finite measure");
  }
  if (g.periodic_superset == Tri::Holds)
    g.dd = merge(g.dd, Tri::Holds, "d-GCC vs periodic superset");

  // Downward chain 0-GCC => 1-GCC => d-GCC.
  if (g.zero == Tri::Holds) g.one = merge(g.one, Tri::Holds, "GCC chain");
  if (g.one == Tri::Holds) g.dd = merge(g.dd, Tri::Holds, "GCC chain");
  // Contrapositive.
  if (g.dd == Tri::Fails) g.one = merge(g.one, Tri::Fails, "GCC chain");
  if (g.one == Tri::Fails) g.zero = merge(g.zero, Tri::Fails, "GCC chain");
  if (g.d == 1) g.dd = g.one;
  return g;
}

ClassifyResult classify(const Facts& facts) {
  const Facts f = complete_facts(facts);
  ClassifyResult out;
  std::vector<StabilityClass> candidates;

  if (f.zero == Tri::Holds)
    candidates.push_back(StabilityClass::exponential(
        {"positive essential infimum <=> exponential (any s)"}));

  if (f.one == Tri::Holds &&
      (f.d == 1 || f.uniformly_continuous == Tri::Holds)) {
    const std::string base =
        f.d == 1 ? "1-GCC (d=1)" : "1-GCC (uniformly continuous damping)";
    if (f.s >= 2.0) {
      candidates.push_back(
          StabilityClass::exponential({base + " => exponential for s >= 2"}));
    } else {
      candidates.push_back(StabilityClass::polynomial(
          f.s / (4.0 - 2.0 * f.s),
          {base + " => s/(4-2s)-polynomial for s < 2"}));
    }
  }

  if (f.finite_measure_sublevel == Tri::Holds) {
    if (f.s >= 2.0 * f.d) {
      candidates.push_back(StabilityClass::exponential(
          {"finite-measure sublevel => exponential for s >= 2d"}));
    } else {
      candidates.push_back(StabilityClass::polynomial(
          f.s / (4.0 * f.d - 2.0 * f.s),
          {"finite-measure sublevel => (4d/s-2)^{-1}-polynomial for s < 2d"}));
    }
  }

  if (f.periodic_superset == Tri::Holds) {
    if (f.s >= 4.0) {
      candidates.push_back(StabilityClass::exponential(
          {"periodic sublevel superset => exponential for s >= 4"}));
    } else {
      candidates.push_back(StabilityClass::polynomial(
          f.s / (8.0 - 2.0 * f.s),
          {"periodic sublevel superset => (8/s-2)^{-1}-polynomial for s < 4"}));
    }
  }

  if (f.dd == Tri::Holds) {
    candidates.push_back(StabilityClass::logarithmic(
        f.s / 2.0, {"d-GCC <=> (s/2)-logarithmic"}));
    candidates.push_back(StabilityClass::small_o({"d-GCC <=> o(1)"}));
  }

  StabilityClass best = StabilityClass::unknown();
  for (const StabilityClass& c : candidates)
    if (stronger_or_equal(c, best)) best = c;
  // Collect provenance of every rule that reached the winning strength.
  if (best.tag != StabilityTag::Unknown) {
    std::vector<std::string> prov;
    for (const StabilityClass& c : candidates)
      if (c.tag == best.tag && stronger_or_equal(c, best))
        for (const std::string& p : c.provenance) prov.push_back(p);
    best.provenance = prov;
  }
  out.cls = best;

  // Necessary directions.
  if (f.s < 2.0 && f.zero == Tri::Fails)
    out.negatives.push_back(
        "not exponential: positive essential infimum is necessary for s < 2");
  if (f.d == 1 && f.s >= 2.0 && f.one == Tri::Fails)
    out.negatives.push_back(
        "not exponential: 1-GCC is necessary (d = 1, s >= 2)");
  if (f.d >= 2 && f.s == 2.0 && f.one == Tri::Fails &&
      f.continuous == Tri::Holds)
    out.negatives.push_back(
        "not exponential: 1-GCC is necessary (s = 2, continuous damping)");
  if (f.dd == Tri::Fails) {
    out.negatives.push_back("not o(1) stable: d-GCC is necessary");
    out.negatives.push_back("not logarithmically stable: d-GCC is necessary");
    out.negatives.push_back("not polynomially stable: d-GCC is necessary");
    out.negatives.push_back("not exponentially stable: d-GCC is necessary");
  }

  if (best.tag == StabilityTag::Exponential)
    for (const std::string& n : out.negatives)
      if (n.rfind("not exponential", 0) == 0)
        throw std::invalid_argument(
            "facts: derived exponential stability contradicts " + n);

  if (f.d >= 2 && f.s > 2.0 && f.dd == Tri::Holds &&
      best.tag < StabilityTag::Exponential && f.one != Tri::Holds)
    out.notes.push_back(
        "open: whether d-GCC alone yields exponential (or polynomial) "
        "stability for large s is not known; classifier stays at the "
        "logarithmic guarantee");

  return out;
}

double exponent_q(double s, double s0, double p) {
  if (!(s > 0.0) || !(s0 > 0.0))
    throw std::invalid_argument("exponent_q: s, s0 must be > 0");
  if (p < 0.0) throw std::invalid_argument("exponent_q: p must be >= 0");
  return (1.0 + p) * s0 / s - 1.0;
}

namespace {

std::string transfer_note(double s0, double s) {
  return "order transfer s0=" + std::to_string(s0) + " -> s=" +
         std::to_string(s);
}

}  // namespace

StabilityClass extrapolate(const StabilityClass& at_s0, double s0, double s) {
  if (!(s > 0.0) || !(s0 > 0.0))
    throw std::invalid_argument("extrapolate: orders must be > 0");
  std::vector<std::string> prov = at_s0.provenance;
  prov.push_back(transfer_note(s0, s));

  switch (at_s0.tag) {
    case StabilityTag::Unknown:
      return StabilityClass::unknown();
    case StabilityTag::SmallO:
      return StabilityClass::small_o(std::move(prov));
    case StabilityTag::Logarithmic: {
      const double p = 1.0 / at_s0.rate;
      return StabilityClass::logarithmic(s / (s0 * p), std::move(prov));
    }
    case StabilityTag::Polynomial: {
      const double p = 1.0 / at_s0.rate;
      if (s >= s0)
        return StabilityClass::polynomial(s / (2.0 * s0 * p), std::move(prov));
      return StabilityClass::polynomial(
          1.0 / (2.0 * exponent_q(s, s0, 2.0 * p)), std::move(prov));
    }
    case StabilityTag::Exponential: {
      if (s >= s0) return StabilityClass::exponential(std::move(prov));
      return StabilityClass::polynomial(1.0 / (2.0 * exponent_q(s, s0, 0.0)),
                                        std::move(prov));
    }
  }
  return StabilityClass::unknown();
}

StabilityClass strong_poly_rule(double p, double s0, double s) {
  if (!(s > 0.0) || !(s0 > 0.0))
    throw std::invalid_argument("strong_poly_rule: orders must be > 0");
  if (p < 0.0) throw std::invalid_argument("strong_poly_rule: p must be >= 0");
  if (s >= (1.0 + p) * s0)
    return StabilityClass::exponential(
        {"strengthened polynomial resolvent at s0 => exponential for s >= "
         "(1+p)s0"});
  return StabilityClass::polynomial(
      1.0 / (2.0 * exponent_q(s, s0, p)),
      {"strengthened polynomial resolvent at s0 => (2q)^{-1}-polynomial"});
}

void ConstantLedger::set(const std::string& name, double value,
                         const std::string& formula) {
  entries_[name] = LedgerEntry{value, formula};
}

double ConstantLedger::get(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end())
    throw std::invalid_argument("ledger: missing input: " + name);
  return it->second.value;
}

bool ConstantLedger::has(const std::string& name) const {
  return entries_.count(name) > 0;
}

namespace {

void require_inputs(const ConstantLedger& ledger,
                    const std::vector<std::string>& names,
                    const std::string& rule) {
  std::string missing;
  for (const std::string& n : names)
    if (!ledger.has(n)) missing += missing.empty() ? n : ", " + n;
  if (!missing.empty())
    throw std::invalid_argument("ledger rule '" + rule +
                                "': missing inputs: " + missing);
}

}  // namespace

void apply_chain_rule(ConstantLedger& ledger, const std::string& rule) {
  const double sqrt2 = std::numbers::sqrt2;
  const double e_half_pi = std::exp(std::numbers::pi / 2.0);

  if (rule == "stability_to_resolvent") {
    require_inputs(ledger, {"M", "omega"}, rule);
    ledger.set("C0", ledger.get("M") / ledger.get("omega"), "C0 = M/omega");
  } else if (rule == "resolvent_to_stability") {
    require_inputs(ledger, {"C0"}, rule);
    ledger.set("M", e_half_pi, "M = e^{pi/2}");
    ledger.set("omega", 1.0 / ledger.get("C0"), "omega = 1/C0");
  } else if (rule == "annihilation_to_decay") {
    require_inputs(ledger, {"C0", "eps0", "mu0", "a_inf"}, rule);
    const double inv =
        8.0 * (1.0 + 1.0 / ledger.get("eps0") + ledger.get("a_inf")) *
        std::pow(1.0 + 1.0 / ledger.get("mu0"), 2.0) *
        (1.0 + ledger.get("C0"));
    ledger.set("omega0", 1.0 / inv,
               "omega0^{-1} = 8(1+eps0^{-1}+|a|)(1+mu0^{-1})^2(1+C0)");
    ledger.set("M", e_half_pi, "M = e^{pi/2}");
  } else if (rule == "halfwave_to_full") {
    require_inputs(ledger, {"C1", "C2", "B_norm", "lambda"}, rule);
    const double C1 = ledger.get("C1"), C2 = ledger.get("C2");
    const double B = ledger.get("B_norm");
    const double lam = std::abs(ledger.get("lambda"));
    const double C3 = std::max(C1, (1.0 + C2 * B) / (1.0 + lam));
    ledger.set("C3", C3, "C3 = max{C1, (1+|lambda|)^{-1}(1+C2|B|)}");
    ledger.set("C_full", 2.0 * (sqrt2 * C3 + 2.0 * std::pow(C2 + C3 * B, 2.0)),
               "C = 2(sqrt2 C3 + 2(C2+C3|B|)^2)");
  } else if (rule == "full_to_halfwave") {
    require_inputs(ledger, {"C0", "B_norm"}, rule);
    ledger.set("C1", ledger.get("C0"), "C1 = C0");
    ledger.set("C2", ledger.get("C0") * ledger.get("B_norm") / sqrt2,
               "C2 = C0|B|/sqrt2");
  } else if (rule == "sigma_support_to_offsupport") {
    require_inputs(ledger, {"C0", "B_norm"}, rule);
    ledger.set("C1", 1.0 + ledger.get("C0") * ledger.get("B_norm"),
               "C1 = 1 + C0|B|");
    ledger.set("C2", ledger.get("C0"), "C2 = C0");
  } else if (rule == "multiplier_to_sigma_support") {
    require_inputs(ledger, {"C1", "C2"}, rule);
    ledger.set("C", 2.0 * ledger.get("C2"), "C = 2 C2");
    ledger.set("mu", 1.0 / (2.0 * ledger.get("C1")), "mu = 1/(2 C1)");
  } else if (rule == "sigma_support_to_multiplier") {
    require_inputs(ledger, {"C0", "mu0", "B_norm"}, rule);
    ledger.set("C1",
               (1.0 + ledger.get("C0") * ledger.get("B_norm")) /
                   ledger.get("mu0"),
               "C1 = mu0^{-1}(1 + C0|B|)");
    ledger.set("C2", ledger.get("C0"), "C2 = C0");
  } else if (rule == "sublevel_halfwave_to_full") {
    require_inputs(ledger, {"C1", "C2", "eps", "a_inf", "lambda"}, rule);
    const double C1 = ledger.get("C1"), C2 = ledger.get("C2");
    const double lam = std::abs(ledger.get("lambda"));
    const double C3 = std::max(C1, (1.0 + C2) / (1.0 + lam));
    ledger.set("C3", C3, "C3 = max{C1, (1+|lambda|)^{-1}(1+C2)}");
    const double t = C2 / std::sqrt(ledger.get("eps")) +
                     C3 * std::sqrt(ledger.get("a_inf"));
    ledger.set("C_full", 2.0 * (sqrt2 * C3 + 2.0 * t * t),
               "C = 2(sqrt2 C3 + 2(eps^{-1/2} C2 + C3 |a|^{1/2})^2)");
  } else if (rule == "full_to_annihilation") {
    require_inputs(ledger, {"C0", "a_inf"}, rule);
    const double C0 = ledger.get("C0");
    ledger.set("ann_bound", 2.0 * (1.0 + sqrt2 * C0 * ledger.get("a_inf")),
               "C(S,Sigma) <= 2(1 + sqrt2 C0 |a|)");
    ledger.set("eps", 1.0 / (2.0 * sqrt2 * C0), "eps = 1/(2 sqrt2 C0)");
    ledger.set("mu", 1.0 / (2.0 * C0), "mu = 1/(2 C0)");
  } else if (rule == "annihilation_to_full") {
    require_inputs(ledger, {"C0", "eps0", "mu0", "a_inf"}, rule);
    const double C0 = ledger.get("C0");
    ledger.set("C_full",
               8.0 * std::pow(1.0 + 1.0 / ledger.get("mu0"), 2.0) *
                   (1.0 + 1.0 / ledger.get("eps0") + ledger.get("a_inf")) *
                   std::pow(1.0 + C0, 2.0),
               "C = 8(1+mu0^{-1})^2(1+eps0^{-1}+|a|)(1+C0)^2");
  } else if (rule == "poly_resolvent_to_stability") {
    require_inputs(ledger, {"p1", "p2"}, rule);
    ledger.set("p", 2.0 * (ledger.get("p1") + ledger.get("p2")),
               "p = 2(p1+p2)");
  } else if (rule == "poly_annihilation_to_stability") {
    require_inputs(ledger, {"p1", "p2", "p3"}, rule);
    ledger.set("p",
               std::max(ledger.get("p1"), 2.0 * ledger.get("p2")) +
                   2.0 * ledger.get("p3"),
               "p = max{p1, 2 p2} + 2 p3");
  } else {
    throw std::invalid_argument("unknown ledger rule: " + rule);
  }
}

std::vector<std::string> chain_rule_names() {
  return {"stability_to_resolvent",
          "resolvent_to_stability",
          "annihilation_to_decay",
          "halfwave_to_full",
          "full_to_halfwave",
          "sigma_support_to_offsupport",
          "multiplier_to_sigma_support",
          "sigma_support_to_multiplier",
          "sublevel_halfwave_to_full",
          "full_to_annihilation",
          "annihilation_to_full",
          "poly_resolvent_to_stability",
          "poly_annihilation_to_stability"};
}

}  // namespace dfkg
