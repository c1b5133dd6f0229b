#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monpres/algebra.hpp"

namespace monpres {

enum class PropStatus { Yes, No, UnknownUpTo };

std::string to_string(PropStatus s);

// A replayable refutation: the diagram inputs and the two routes that differ.
struct PropWitness {
  int set_size = 0;
  std::string diagram;
  std::vector<TObject> elements;
  TObject lhs, rhs;
};

struct PropVerdict {
  PropStatus status = PropStatus::UnknownUpTo;
  int bound = 0;           // largest size the search covered
  std::string certificate; // analytic justification when status is Yes
  std::string detail;
  std::optional<PropWitness> witness;

  std::string to_json() const;
};

// |T1| = 1, decided exactly. A No carries the first two elements of T1 when
// they can be enumerated.
PropVerdict is_affine(const Monad& t);

// Whether strength after duplication equals mapped duplication, on every
// element over carriers of size <= max_size. No is conclusive; Yes only comes
// with an instance certificate; otherwise UnknownUpTo. The sampleable tier is
// probed with uniform two-point batteries plus seeded samples.
PropVerdict relevance_check(const MonadPtr& t, int max_size = 3, std::uint64_t seed = 1);

// Same regime for the n-fold diagonal (n >= 2), cross-checked against the
// equivalent statement that n-fold strength splits the n projections back to
// the identity on product carriers.
PropVerdict n_relevance_check(const MonadPtr& t, int n, int max_size = 3,
                              std::uint64_t seed = 1);

// Instance-wise implication: affine and n-relevant at bound forces relevance
// not to be refuted at the same bound.
bool relevant_and_affine_implies_relevant_test(const MonadPtr& t, int n, int max_size = 3);

// Free-algebra characterization: every generic n-ary operation, read as an
// element of T(n), must collapse an n x n matrix of fresh variables to its
// diagonal. Enumerable tier; arities 1..max_arity.
PropVerdict algebraic_relevance_check(const MonadPtr& t, int max_arity = 3,
                                      std::uint64_t budget = kDefaultEnumBudget);

// ---------------------------------------------------------------------------
// Bounded decision for whether an equation can tell its duplicated positions
// apart: hunt for a finite algebra separating the primed companion, or derive
// the companion from the equation by rewriting.

enum class Discernment { Discerning, NotDiscerning, Unknown };

std::string to_string(Discernment d);

struct DiscerningOptions {
  int model_bound = 4;
  int derivation_depth = 4;            // depth cap on rewritten terms
  std::uint64_t visited_budget = 100000;  // distinct terms the rewrite search may visit
  std::uint64_t node_budget = 5000000;    // table cells the model search may try
};

struct DiscerningReport {
  Discernment verdict = Discernment::Unknown;
  DiscerningCompanion companion;
  std::optional<FinAlgebra> countermodel;    // satisfies eq, separates the companion
  std::vector<int> countermodel_assignment;  // companion-variable valuation that separates
  std::vector<std::string> derivation;       // rewrite chain from s2 to s2'
  DiscerningOptions options;

  std::string to_json() const;
};

DiscerningReport two_discerning_check(const Equation& eq, const DiscerningOptions& o = {});

}  // namespace monpres
