#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfkg {

// Decay classes of the semigroup, ordered by strength. Rates follow the
// semigroup normalization: for Polynomial/Logarithmic, `rate` is the decay
// exponent 1/p of |T(t) A^{-1}|; observed energies of smoothed data decay
// with exponent 2/p. The conversion lives in ratefit, not here.
enum class StabilityTag { Unknown, SmallO, Logarithmic, Polynomial, Exponential };

std::string to_string(StabilityTag t);

struct StabilityClass {
  StabilityTag tag = StabilityTag::Unknown;
  double rate = 0.0;   // 1/p for Polynomial/Logarithmic
  double M = 0.0;      // optional (M, omega) for Exponential; 0 = unset
  double omega = 0.0;
  std::vector<std::string> provenance;

  static StabilityClass exponential(std::vector<std::string> prov = {},
                                    double M = 0.0, double omega = 0.0);
  static StabilityClass polynomial(double rate,
                                   std::vector<std::string> prov = {});
  static StabilityClass logarithmic(double rate,
                                    std::vector<std::string> prov = {});
  static StabilityClass small_o(std::vector<std::string> prov = {});
  static StabilityClass unknown();
};

// Partial order on classes: higher tag wins; within Polynomial or
// Logarithmic a larger rate is stronger.
bool stronger_or_equal(const StabilityClass& a, const StabilityClass& b);

enum class Tri { Unknown, Holds, Fails };

std::string to_string(Tri t);

// Known facts about the damped region R^d \ S(a, eps) (for some eps) and
// structural features of the damping coefficient.
struct Facts {
  int d = 1;
  double s = 2.0;
  Tri zero = Tri::Unknown;  // 0-GCC
  Tri one = Tri::Unknown;   // 1-GCC
  Tri dd = Tri::Unknown;    // d-GCC
  Tri finite_measure_sublevel = Tri::Unknown;
  Tri periodic_superset = Tri::Unknown;  // S(a,eps) inside a proper closed periodic set
  Tri uniformly_continuous = Tri::Unknown;
  Tri continuous = Tri::Unknown;
};

// Auto-completion: 0-GCC => 1-GCC => d-GCC; in d = 1 the two coincide;
// finite-measure or periodic sublevels force d-GCC (and 1-GCC when d = 1);
// uniform continuity implies continuity. Contradictions are rejected.
Facts complete_facts(const Facts& f);

struct ClassifyResult {
  StabilityClass cls;
  std::vector<std::string> negatives;  // certified non-memberships
  std::vector<std::string> notes;      // open-problem flags
};

ClassifyResult classify(const Facts& facts);

// Extrapolation exponent q = (1+p) s0/s - 1.
double exponent_q(double s, double s0, double p);

// Order-transfer map: a class known at order s0 yields a class at order s.
StabilityClass extrapolate(const StabilityClass& at_s0, double s0, double s);

// Stronger polynomial resolvent hypothesis at s0 (exponent p): exponential
// for s >= (1+p) s0, polynomial with rate 1/(2q) below.
StabilityClass strong_poly_rule(double p, double s0, double s);

// Named constants with the formulas used to derive them.
struct LedgerEntry {
  double value = 0.0;
  std::string formula;  // "input" for externally supplied values
};

class ConstantLedger {
 public:
  void set(const std::string& name, double value,
           const std::string& formula = "input");
  double get(const std::string& name) const;
  bool has(const std::string& name) const;
  const std::map<std::string, LedgerEntry>& entries() const { return entries_; }

 private:
  std::map<std::string, LedgerEntry> entries_;
};

// Constant-propagation rules. Each consumes named ledger inputs and appends
// derived entries; missing inputs are reported by name.
//   stability_to_resolvent        M, omega             -> C0
//   resolvent_to_stability        C0                   -> M, omega
//   annihilation_to_decay         C0, eps0, mu0, a_inf -> omega0 (and M)
//   halfwave_to_full              C1, C2, B_norm, lambda -> C3, C_full
//   full_to_halfwave              C0, B_norm           -> C1, C2
//   sigma_support_to_offsupport   C0, B_norm           -> C1, C2
//   multiplier_to_sigma_support   C1, C2               -> C, mu
//   sigma_support_to_multiplier   C0, mu0, B_norm      -> C1, C2
//   sublevel_halfwave_to_full     C1, C2, eps, a_inf, lambda -> C3, C_full
//   full_to_annihilation          C0, a_inf            -> ann_bound, eps, mu
//   annihilation_to_full          C0, eps0, mu0, a_inf -> C_full
//   poly_resolvent_to_stability   p1, p2               -> p
//   poly_annihilation_to_stability p1, p2, p3          -> p
void apply_chain_rule(ConstantLedger& ledger, const std::string& rule);

std::vector<std::string> chain_rule_names();

}  // namespace dfkg
