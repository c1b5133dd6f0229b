#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <monpres/terms.hpp>

#include <algorithm>
#include <vector>

using namespace monpres;

namespace {

const Signature& sig_mul() {
  static const Signature s({{"mul", 2}});
  return s;
}

const Signature& sig_mz() {
  static const Signature s({{"mul", 2}, {"zero", 0}});
  return s;
}

EquationClass cls(const Signature& s, const std::string& text) {
  return classify(parse_equation(text, s));
}

}  // namespace

TEST_CASE("term parsing") {
  Term t = parse_term("mul(x, mul(y', x))", sig_mul());
  CHECK_FALSE(t.is_var());
  CHECK(t.head == "mul");
  REQUIRE(t.args.size() == 2);
  CHECK(t.args[0].is_var());
  CHECK(t.args[1].args[0].head == "y'");
  CHECK(pretty(t) == "mul(x, mul(y', x))");
  CHECK(depth(t) == 2);

  // Constants may drop their parentheses.
  Term z = parse_term("zero", sig_mz());
  CHECK_FALSE(z.is_var());
  CHECK(z.args.empty());
  CHECK(parse_term("zero()", sig_mz()) == z);

  CHECK_THROWS_AS(parse_term("mul(x)", sig_mul()), ParseError);       // arity
  CHECK_THROWS_AS(parse_term("mul(x, y", sig_mul()), ParseError);     // unbalanced
  CHECK_THROWS_AS(parse_term("mul(x,y) z", sig_mul()), ParseError);   // trailing junk
  CHECK_THROWS_AS(parse_term("x(y)", sig_mul()), ParseError);         // variable applied

  try {
    parse_term("mul(x,", sig_mul());
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line >= 1);
    CHECK(e.col >= 1);
  }
}

TEST_CASE("variable bookkeeping") {
  Term t = parse_term("mul(mul(y,x),mul(y,y))", sig_mul());
  CHECK(term_vars(t) == std::vector<std::string>{"y", "x"});
  CHECK(arg_word(t) == std::vector<std::string>{"y", "x", "y", "y"});
  auto counts = var_counts(t);
  CHECK(counts.at("y") == 3);
  CHECK(counts.at("x") == 1);

  Equation e = parse_equation("mul(x,zero) = zero", sig_mz(), "absorb");
  CHECK(e.name == "absorb");
  CHECK(e.vars == std::vector<std::string>{"x"});
  CHECK(pretty(e) == "mul(x, zero) = zero");
}

TEST_CASE("classification") {
  auto flags = [](const EquationClass& c) {
    std::vector<std::string> on;
    for (const auto& [name, v] : class_flags(c))
      if (v) on.push_back(name);
    return on;
  };

  CHECK(flags(cls(sig_mul(), "mul(x,y) = mul(y,x)")) == std::vector<std::string>{"linear"});
  CHECK(flags(cls(sig_mul(), "mul(mul(x,y),z) = mul(x,mul(y,z))")) ==
        std::vector<std::string>{"linear"});
  CHECK(flags(cls(sig_mz(), "mul(x,zero) = zero")) ==
        std::vector<std::string>{"drop", "one-drop", "strict-drop"});
  CHECK(flags(cls(sig_mul(), "mul(mul(x,y),z) = mul(x,y)")) ==
        std::vector<std::string>{"drop", "one-drop", "strict-drop"});
  CHECK(flags(cls(sig_mul(), "mul(x,x) = x")) ==
        std::vector<std::string>{"dup", "two-dup", "strict-dup"});
  CHECK(flags(cls(sig_mul(), "mul(z,mul(x,x)) = mul(mul(z,y),x)")) ==
        std::vector<std::string>{"drop", "one-drop", "dup", "two-dup"});
  // Triple occurrence: duplicating but not 2-duplicating.
  Signature f3({{"f", 3}});
  CHECK(flags(cls(f3, "f(x,x,x) = x")) == std::vector<std::string>{"dup", "strict-dup"});

  CHECK_THROWS_AS(classify(parse_equation("zero = zero", sig_mz())), StructuralError);
}

TEST_CASE("discerning companion") {
  Equation idem = parse_equation("mul(x,x) = x", sig_mul());
  CompanionResult r = discerning_companion(idem);
  REQUIRE(r.companion.has_value());
  CHECK(r.companion->dup_var == "x");
  CHECK(r.companion->side == DiscerningCompanion::Side::Lhs);
  const Equation& c = r.companion->companion;
  // Second occurrence primed on one side, the two copies swapped on the other.
  auto lw = arg_word(c.lhs);
  auto rw = arg_word(c.rhs);
  REQUIRE(lw.size() == 2);
  CHECK(lw[0] == r.companion->dup_var);
  CHECK(lw[1] == r.companion->fresh_var);
  CHECK(rw[0] == r.companion->fresh_var);
  CHECK(rw[1] == r.companion->dup_var);

  // Dropping equations have no companion.
  CompanionResult bad = discerning_companion(parse_equation("mul(x,zero) = zero", sig_mz()));
  CHECK_FALSE(bad.companion.has_value());
  CHECK_FALSE(bad.reason.empty());

  // So do equations with a variable occurring three times.
  Signature f3({{"f", 3}});
  CompanionResult cube = discerning_companion(parse_equation("f(x,x,x) = x", f3));
  CHECK_FALSE(cube.companion.has_value());
}

TEST_CASE("matching and rewriting") {
  Term pat = parse_term("mul(a,mul(b,b))", sig_mul());
  Term sub = parse_term("mul(x,mul(mul(y,z),mul(y,z)))", sig_mul());
  auto s = match(pat, sub);
  REQUIRE(s.has_value());
  CHECK(pretty(s->at("a")) == "x");
  CHECK(pretty(s->at("b")) == "mul(y, z)");
  CHECK(substitute(pat, *s) == sub);

  CHECK_FALSE(match(pat, parse_term("mul(x,mul(y,z))", sig_mul())).has_value());

  // One idempotence rewrite step in either direction.
  Term from = parse_term("mul(v,v)", sig_mul());
  Term to = parse_term("v", sig_mul());
  Term subject = parse_term("mul(mul(x,x),y)", sig_mul());
  std::vector<Term> outs = rewrites(subject, from, to, {});
  bool found = std::any_of(outs.begin(), outs.end(),
                           [](const Term& t) { return pretty(t) == "mul(x, y)"; });
  CHECK(found);

  // The reverse direction duplicates the matched subterm.
  std::vector<Term> expands = rewrites(parse_term("mul(x,y)", sig_mul()), to, from, {});
  bool expanded = std::any_of(expands.begin(), expands.end(), [](const Term& t) {
    return pretty(t) == "mul(mul(x, x), y)";
  });
  CHECK(expanded);

  // A dropping rule read backwards introduces a fresh variable, filled in
  // from the candidate pool.
  Term a = parse_term("a", sig_mul());
  Term ab = parse_term("mul(a,b)", sig_mul());
  std::vector<Term> cands{var("q")};
  std::vector<Term> fresh = rewrites(parse_term("x", sig_mul()), a, ab, cands);
  bool instantiated = std::any_of(fresh.begin(), fresh.end(), [](const Term& t) {
    return pretty(t) == "mul(x, q)";
  });
  CHECK(instantiated);
}

TEST_CASE("theory files") {
  Theory th = parse_theory(
      "# comment\n"
      "theory demo\n"
      "ops: mul/2, zero/0\n"
      "\n"
      "eq: mul(x,y) = mul(y,x)\n"
      "eq: mul(x,zero) = zero\n");
  CHECK(th.name == "demo");
  CHECK(th.sig.size() == 2);
  REQUIRE(th.equations.size() == 2);
  CHECK(th.equations[0].name == "demo.1");
  CHECK(th.equations[1].name == "demo.2");

  CHECK_THROWS_AS(parse_theory("ops: m/2\n"), ParseError);
  CHECK_THROWS_AS(parse_theory("theory t\nops: m/2\nwhat\n"), ParseError);
  CHECK_THROWS_AS(parse_theory("theory t\nops: m/q\n"), ParseError);
  try {
    parse_theory("theory t\nops: m/2\neq: m(x) = x\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}
