#pragma once

#include <optional>
#include <string>

#include "monpres/monads.hpp"

namespace monpres {

// First law violation found, with enough context to replay it by hand.
struct LawFailure {
  std::string law;
  std::string detail;
};

struct LawStats {
  std::uint64_t instances = 0;  // element tuples fed through diagrams
};

struct LawOptions {
  int exhaustive_max = 2;   // base sizes checked exhaustively (enumerable tier)
  int spot_size = 3;        // one larger size checked on sampled elements
  int spot_samples = 60;
  int dist_samples = 120;   // sampled instances per law for the sampleable tier
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultEnumBudget;
};

// Functor identity/composition and naturality of unit and multiplication.
std::optional<LawFailure> check_functor_laws(const Monad& t, const LawOptions& o,
                                             LawStats* stats = nullptr);
// Unit laws and associativity of multiplication.
std::optional<LawFailure> check_monad_laws(const Monad& t, const LawOptions& o,
                                           LawStats* stats = nullptr);
// Unitors, associativity and symmetry of the strength, unit and multiplication
// compatibility (the two monoidal-multiplication squares).
std::optional<LawFailure> check_monoidal_laws(const Monad& t, const LawOptions& o,
                                              LawStats* stats = nullptr);
// Naturality of psi and of the pairing chi.
std::optional<LawFailure> check_naturality(const Monad& t, const LawOptions& o,
                                           LawStats* stats = nullptr);
// chi after T(diagonal) is the diagonal on TX.
std::optional<LawFailure> check_diagonal_identity(const Monad& t, const LawOptions& o,
                                                  LawStats* stats = nullptr);

std::optional<LawFailure> check_all_laws(const Monad& t, const LawOptions& o,
                                         LawStats* stats = nullptr);

}  // namespace monpres
