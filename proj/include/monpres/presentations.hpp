#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monpres/props.hpp"
#include "monpres/terms.hpp"

namespace monpres {

// A finitely presented monoid. Generators are single-character symbols so
// relation words can be written as plain strings; the empty string is the
// monoid unit.
struct MonoidPresentation {
  std::vector<std::string> generators;
  std::vector<std::pair<std::string, std::string>> relations;
};

// Rejects duplicate or multi-character generators and relation words using
// undeclared symbols.
void validate(const MonoidPresentation& p);

// Text format:
//   generators: a,b
//   relations: aa = ; ab = ba
// Blank lines and #-comments are allowed; an empty relation side is the empty
// word; the relations line may be omitted or repeated.
MonoidPresentation parse_presentation(const std::string& text);
MonoidPresentation load_presentation(const std::string& path);
MonoidPresentation presentation_from_json_text(const std::string& text);
std::string presentation_to_json_text(const MonoidPresentation& p);

// One unary symbol per generator; each relation becomes an equation between
// chains applied to a single variable, with the empty word as the bare
// variable. The resulting theory presents the writer-style monad whose unit
// set is the presented monoid.
Theory encode_as_theory(const MonoidPresentation& p);

// ---------------------------------------------------------------------------
// Bounded semi-decision of monoid triviality. Conclusive answers are
// certified either way; Unknown is unavoidable in general.

enum class Triviality { Trivial, NonTrivial, Unknown };

std::string to_string(Triviality t);

struct MonoidCountermodel {
  MonoidTable monoid;
  std::map<std::string, int> images;  // generator -> element index
};

struct TrivialityReport {
  Triviality verdict = Triviality::Unknown;
  // One rewrite chain per generator, in declaration order, ending at the
  // empty word.
  std::vector<std::vector<std::string>> traces;
  std::optional<MonoidCountermodel> countermodel;
  std::uint64_t rewrite_budget = 0;
  int model_bound = 0;

  std::string to_json() const;
};

// Finite-monoid countermodel search up to model_bound, then a breadth-first
// rewrite search driving every generator to the empty word within
// rewrite_budget visited words.
TrivialityReport t1_triviality(const MonoidPresentation& p,
                               std::uint64_t rewrite_budget = 100000, int model_bound = 4);

// Affineness of the monad the presentation gives rise to: its unit set is the
// presented monoid, so triviality verdicts map straight onto affineness.
PropVerdict affineness_of_presented(const MonoidPresentation& p,
                                    std::uint64_t rewrite_budget = 100000,
                                    int model_bound = 4);

}  // namespace monpres
