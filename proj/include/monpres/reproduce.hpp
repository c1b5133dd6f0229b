#pragma once

#include <string>
#include <vector>

#include "monpres/preserve.hpp"
#include "monpres/presentations.hpp"
#include "monpres/props.hpp"

namespace monpres {

// One acceptance criterion: a self-contained check with frozen expected
// outcomes, reported pass/fail with enough detail to chase a regression.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct ReproduceOptions {
  std::uint64_t seed = 1;
  int jobs = 0;               // forwarded to preservation scans
  bool sabotage_psi = false;  // break the powerset strength as a negative control
  std::vector<int> only;      // criterion ids to run; empty runs all
};

struct ReproduceReport {
  ReproduceOptions options;
  std::vector<CriterionResult> results;

  bool all_passed() const;
  std::string to_json() const;
};

// "[PASS] 3 distribution-idempotence-witness (0.01s)"
std::string criterion_line(const CriterionResult& r);

// Runs the acceptance suite: the law battery, the affineness/relevance table,
// the frozen preservation verdicts and witnesses, the discernment and
// triviality demonstrators, and the factorization/strength diagram checks.
// A criterion that throws is reported failed with the exception text.
ReproduceReport run_acceptance(const ReproduceOptions& o = {});

}  // namespace monpres
