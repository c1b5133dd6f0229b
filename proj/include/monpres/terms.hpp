#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monpres/common.hpp"

namespace monpres {

struct OpDecl {
  std::string name;
  int arity = 0;

  bool operator==(const OpDecl&) const = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpDecl> ops);  // rejects duplicate names

  int index_of(const std::string& name) const;  // -1 when absent
  const OpDecl& at(int i) const { return ops_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(ops_.size()); }
  const std::vector<OpDecl>& ops() const { return ops_; }

  bool operator==(const Signature&) const = default;

 private:
  std::vector<OpDecl> ops_;
};

// op < 0 marks a variable; head then names it. Otherwise head is the symbol
// and op its index in the owning signature.
struct Term {
  std::string head;
  int op = -1;
  std::vector<Term> args;

  bool is_var() const { return op < 0; }
  bool operator==(const Term&) const = default;
};

Term var(std::string name);
Term app(const Signature& sig, const std::string& symbol, std::vector<Term> args);

std::string pretty(const Term& t);
int depth(const Term& t);

// Variables in first-occurrence order, left to right.
std::vector<std::string> term_vars(const Term& t);
// The argument word: variable occurrences left to right, with multiplicity.
std::vector<std::string> arg_word(const Term& t);
std::map<std::string, int> var_counts(const Term& t);

struct Equation {
  Signature sig;
  Term lhs, rhs;
  std::vector<std::string> vars;  // first-occurrence order, lhs then rhs
  std::string name;
};

Equation make_equation(Signature sig, Term lhs, Term rhs, std::string name = "");
std::string pretty(const Equation& e);

// Prefix term syntax: ident or ident(args); constants may drop the parens.
// Identifiers are [A-Za-z_][A-Za-z0-9_']*; names in the signature are symbols,
// anything else is a variable.
Term parse_term(const std::string& text, const Signature& sig);
Equation parse_equation(const std::string& text, const Signature& sig, std::string name = "");

struct Theory {
  std::string name;
  Signature sig;
  std::vector<Equation> equations;
};

// theory <name> / ops: sym/arity, ... / eq: term = term. Blank lines and
// #-comments are allowed anywhere.
Theory parse_theory(const std::string& text);
Theory load_theory(const std::string& path);

// ---------------------------------------------------------------------------
// Syntactic classification.

struct EquationClass {
  bool linear = false;
  bool drop = false;
  bool one_drop = false;
  bool strict_drop = false;
  bool dup = false;
  bool two_dup = false;
  bool strict_dup = false;
};

EquationClass classify(const Equation& e);
std::vector<std::pair<std::string, bool>> class_flags(const EquationClass& c);

// ---------------------------------------------------------------------------
// Companion equation for duplication analysis: the side carrying the unique
// twice-occurring variable, with its second occurrence renamed to a fresh
// primed copy, equated against the same term with the two copies swapped.

struct DiscerningCompanion {
  Equation companion;
  std::string dup_var;
  std::string fresh_var;
  enum class Side { Lhs, Rhs } side;  // side of the input carrying the duplicate
};

struct CompanionResult {
  std::optional<DiscerningCompanion> companion;
  std::string reason;  // failing condition when empty
};

CompanionResult discerning_companion(const Equation& e);

// ---------------------------------------------------------------------------
// Rewriting support for derivability searches.

using Subst = std::map<std::string, Term>;

std::optional<Subst> match(const Term& pattern, const Term& subject);
Term substitute(const Term& t, const Subst& s);
// Every term reachable by rewriting one subterm occurrence of `from` (as a
// pattern) to `to` under the matched substitution. Patterns whose right side
// introduces fresh variables get them instantiated from `candidates`.
std::vector<Term> rewrites(const Term& subject, const Term& from, const Term& to,
                           const std::vector<Term>& candidates);

}  // namespace monpres
