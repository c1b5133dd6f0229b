#pragma once

#include <functional>
#include <optional>

#include "monpres/monads.hpp"
#include "monpres/terms.hpp"

namespace monpres {

// A finite algebra for a signature: one table per symbol, row-major over the
// argument tuple with the leftmost argument most significant.
struct FinAlgebra {
  Signature sig;
  FinSet carrier;
  std::vector<FinFun> ops;  // ops[i].dom = carrier^arity_i, cod = carrier

  int apply(int op, std::span<const int> args) const;

  bool operator==(const FinAlgebra&) const = default;
};

void validate(const FinAlgebra& a);

FinAlgebra algebra_from_json_text(const std::string& text, const Signature& sig);
std::string algebra_to_json_text(const FinAlgebra& a);
FinAlgebra load_algebra(const std::string& path, const Signature& sig);

// Environment maps equation variables (by position in eq.vars) to elements.
int interpret(const FinAlgebra& a, const Term& t, std::span<const std::string> vars,
              std::span<const int> env);

struct SatResult {
  bool holds = true;
  std::vector<int> counterexample;  // assignment by vars order when !holds
};

SatResult satisfies(const FinAlgebra& a, const Equation& e);

// ---------------------------------------------------------------------------
// Argument-word decomposition: any term factors as a linear evaluation after a
// projection that reorders and duplicates variables.

// Positions into V (0-based) of the argument word of t; prepare as a function
// A^|V| -> A^k with k = |arg word|.
std::vector<int> prepare_positions(const Term& t, std::span<const std::string> vars);
FinFun prepare_fun(const Term& t, std::span<const std::string> vars, int carrier_size);
// The linear evaluation A^k -> A consuming the argument word left to right.
FinFun evaluate_fun(const FinAlgebra& a, const Term& t);

// ---------------------------------------------------------------------------
// Lifting along a monad: each table becomes T-arity-fold strength followed by
// the mapped table.

class LiftedAlgebra {
 public:
  LiftedAlgebra(MonadPtr t, FinAlgebra base);

  const FinAlgebra& base() const { return base_; }
  const Monad& monad() const { return *t_; }

  TObject apply(int op, std::span<const TObject> args) const;
  TObject interpret(const Term& t, std::span<const std::string> vars,
                    std::span<const TObject> env) const;

  // Materialise the lifted algebra as a finite algebra over carrier indices.
  // Enumerable tier only; refuses when a table would exceed the budget.
  FinAlgebra tabulate(std::uint64_t budget = kDefaultEnumBudget) const;

 private:
  MonadPtr t_;
  FinAlgebra base_;
};

LiftedAlgebra lift(MonadPtr t, FinAlgebra base);

// ---------------------------------------------------------------------------
// Enumeration of all algebras of a given carrier size, lexicographic over the
// concatenated tables. The exact count is checked against the budget first.

class AlgebraRange {
 public:
  AlgebraRange(Signature sig, int carrier_size, std::uint64_t budget);

  const BigInt& count() const { return count_; }

  // Random access by ordinal < count; usable even when count exceeds the
  // budget, so callers can scan a clamped prefix.
  FinAlgebra at(std::uint64_t ordinal) const;
  // count as uint64; refuses (BudgetError) when it exceeds the budget.
  std::uint64_t size() const;

 private:
  Signature sig_;
  int carrier_;
  BigInt count_;
  std::uint64_t budget_;
  std::vector<std::int64_t> table_sizes_;
};

AlgebraRange enumerate_algebras(const Signature& sig, int carrier_size,
                                std::uint64_t budget = kDefaultEnumBudget);

// Algebra on X^n with one binary symbol "m"; each output wire copies a
// coordinate of the left input (1..n) or the right input (n+1..2n).
FinAlgebra projection_algebra(int base_size, int n, std::span<const int> wires);

}  // namespace monpres
