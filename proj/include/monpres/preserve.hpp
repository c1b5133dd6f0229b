#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monpres/algebra.hpp"

namespace monpres {

enum class Verdict { PreservedUpToBound, Violated, Unknown };

std::string to_string(Verdict v);

// A replayable violation: a base algebra satisfying the equation together with
// a lifted assignment on which the two sides disagree.
struct Witness {
  FinAlgebra algebra;
  std::vector<TObject> assignment;  // one element per equation variable
  TObject lhs, rhs;
};

struct CheckStats {
  std::uint64_t algebras_scanned = 0;
  std::uint64_t algebras_satisfying = 0;
  std::uint64_t assignments_scanned = 0;
  bool algebra_budget_hit = false;
  bool assignment_budget_hit = false;
};

struct CheckBounds {
  int max_carrier = 3;
  std::uint64_t max_algebras = kDefaultEnumBudget;
  std::uint64_t per_algebra_assignments = kDefaultEnumBudget;
  std::uint64_t randomized_trials = 2000;  // per satisfying algebra
};

// A starting point scanned before the systematic enumeration: a known algebra,
// optionally with specific assignments tried before the generic scan.
struct Seed {
  FinAlgebra algebra;
  std::vector<std::vector<TObject>> assignments;
};

struct CheckOptions {
  CheckBounds bounds;
  bool randomized = false;  // mandatory for the sampleable tier
  std::uint64_t seed = 1;
  int jobs = 0;  // 0: MONADPRESERVE_JOBS env var, else 1
  std::vector<Seed> seeds;
};

struct CheckReport {
  Verdict verdict = Verdict::Unknown;
  std::string monad;
  std::string equation;
  std::string name;
  std::vector<std::string> vars;  // assignment order in the witness
  CheckBounds bounds;
  bool randomized = false;
  std::uint64_t seed = 1;
  std::optional<Witness> witness;
  CheckStats stats;

  std::string to_json() const;
};

// Scans algebras satisfying eq (seeds first, then every algebra of carrier
// 1..max_carrier in enumeration order) and hunts for a lifted assignment
// separating the two sides. Verdicts: Violated with the least witness in scan
// order; PreservedUpToBound when the exhaustive scan finished; Unknown when a
// budget was hit or when sampling found nothing. Parallel and serial runs
// return identical reports.
CheckReport check_preservation(const MonadPtr& t, const Equation& eq,
                               const CheckOptions& o = {});

struct WitnessEval {
  bool violates = false;
  TObject lhs, rhs;
};

// Replays one assignment through the lifted algebra. The algebra must satisfy
// the base equation; the assignment must match the variable count and carrier.
WitnessEval verify_witness(const MonadPtr& t, const Equation& eq, const FinAlgebra& alg,
                           std::span<const TObject> assignment);

struct ResidualResult {
  bool commutes = true;
  std::vector<TObject> witness;  // tuple over the variables where routes differ
  TObject upper, lower;          // strength-then-select vs map-after-strength
};

// Whether psi^k . prepare_T(t) == T(prepare(t)) . psi^|V| on every tuple of
// lifted carrier elements. Enumerable tier only. Holds automatically when the
// argument word of t lists each variable of V exactly once.
ResidualResult residual_commutes(const MonadPtr& t, const Term& term,
                                 std::span<const std::string> vars, int carrier_size,
                                 std::uint64_t budget = kDefaultEnumBudget);

// One-drop diagram over the one-point carrier: precomposing the residual
// routes of the side carrying the once-occurring dropped variable with
// alpha = id x unit^n (dropped variable moved first) commutes for every
// monoidal monad. Throws StructuralError unless eq is one-drop.
bool alphacom_check(const MonadPtr& t, const Equation& eq);

}  // namespace monpres
