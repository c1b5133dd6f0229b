#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <monpres/preserve.hpp>

#include <vector>

using namespace monpres;

namespace {

const Signature& sig_mul() {
  static const Signature s({{"mul", 2}});
  return s;
}

Equation idem() { return parse_equation("mul(x,x) = x", sig_mul(), "idem"); }

}  // namespace

TEST_CASE("powerset breaks idempotence at carrier three") {
  CheckOptions o;
  o.bounds.max_carrier = 3;
  CheckReport rep = check_preservation(powerset(), idem(), o);
  CHECK(rep.verdict == Verdict::Violated);
  REQUIRE(rep.witness.has_value());
  // Every idempotent algebra on one or two points lifts cleanly, so the least
  // witness lives on three.
  CHECK(rep.witness->algebra.carrier.size == 3);
  CHECK(satisfies(rep.witness->algebra, idem()).holds);
  CHECK(rep.witness->lhs != rep.witness->rhs);

  WitnessEval replay =
      verify_witness(powerset(), idem(), rep.witness->algebra, rep.witness->assignment);
  CHECK(replay.violates);
  CHECK(replay.lhs == rep.witness->lhs);
  CHECK(replay.rhs == rep.witness->rhs);
}

TEST_CASE("maybe preserves idempotence up to the bound") {
  CheckOptions o;
  o.bounds.max_carrier = 3;
  CheckReport rep = check_preservation(maybe(), idem(), o);
  CHECK(rep.verdict == Verdict::PreservedUpToBound);
  CHECK_FALSE(rep.witness.has_value());
  CHECK(rep.stats.algebras_scanned > 0);
  CHECK(rep.stats.algebras_satisfying > 0);
  CHECK(rep.stats.assignments_scanned > 0);
  CHECK_FALSE(rep.stats.algebra_budget_hit);
  CHECK_FALSE(rep.stats.assignment_budget_hit);
}

TEST_CASE("parallel scans match the serial report") {
  CheckOptions serial;
  serial.bounds.max_carrier = 3;
  serial.jobs = 1;
  CheckOptions parallel = serial;
  parallel.jobs = 3;
  CheckReport a = check_preservation(powerset(), idem(), serial);
  CheckReport b = check_preservation(powerset(), idem(), parallel);
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("budget exhaustion reports unknown") {
  Equation comm = parse_equation("mul(x,y) = mul(y,x)", sig_mul(), "comm");
  CheckOptions o;
  o.bounds.max_carrier = 2;
  o.bounds.max_algebras = 1;
  CheckReport rep = check_preservation(powerset(), comm, o);
  CHECK(rep.verdict == Verdict::Unknown);
  CHECK(rep.stats.algebra_budget_hit);
}

TEST_CASE("the sampleable tier requires randomized mode") {
  CheckOptions o;
  o.bounds.max_carrier = 2;
  CHECK_THROWS_AS(check_preservation(dist(), idem(), o), CapabilityError);
}

TEST_CASE("randomized runs are seed-deterministic") {
  CheckOptions o;
  o.bounds.max_carrier = 2;
  o.randomized = true;
  o.seed = 5;
  CheckReport a = check_preservation(dist(), idem(), o);
  CHECK(a.verdict == Verdict::Violated);
  REQUIRE(a.witness.has_value());
  WitnessEval replay = verify_witness(dist(), idem(), a.witness->algebra, a.witness->assignment);
  CHECK(replay.violates);

  CheckReport b = check_preservation(dist(), idem(), o);
  CHECK(a.to_json() == b.to_json());

  o.seed = 6;
  CheckReport c = check_preservation(dist(), idem(), o);
  CHECK(c.verdict == Verdict::Violated);
}

TEST_CASE("seeds are scanned before the enumeration") {
  CheckOptions full;
  full.bounds.max_carrier = 3;
  CheckReport found = check_preservation(powerset(), idem(), full);
  REQUIRE(found.witness.has_value());

  CheckOptions seeded;
  seeded.bounds.max_carrier = 3;
  Seed s;
  s.algebra = found.witness->algebra;
  s.assignments = {found.witness->assignment};
  seeded.seeds = {s};
  CheckReport rep = check_preservation(powerset(), idem(), seeded);
  CHECK(rep.verdict == Verdict::Violated);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->algebra == found.witness->algebra);
  CHECK(rep.witness->assignment == found.witness->assignment);
  // The explicit assignment is tried first, before any enumeration.
  CHECK(rep.stats.assignments_scanned == 1);
}

TEST_CASE("verify_witness rejects a non-satisfying algebra") {
  FinAlgebra xorsum;
  xorsum.sig = sig_mul();
  xorsum.carrier = fin(2);
  xorsum.ops = {FinFun{4, 2, {0, 1, 1, 0}}};
  std::vector<TObject> assignment{powerset()->unit(fin(2), 0)};
  CHECK_THROWS_AS(verify_witness(powerset(), idem(), xorsum, assignment), StructuralError);
}

TEST_CASE("residual squares") {
  Term linear = parse_term("mul(x,y)", sig_mul());
  std::vector<std::string> xy{"x", "y"};
  ResidualResult ok = residual_commutes(powerset(), linear, xy, 2);
  CHECK(ok.commutes);

  Term squared = parse_term("mul(x,x)", sig_mul());
  std::vector<std::string> just_x{"x"};
  ResidualResult bad = residual_commutes(powerset(), squared, just_x, 2);
  CHECK_FALSE(bad.commutes);
  CHECK(bad.upper != bad.lower);
  REQUIRE(bad.witness.size() == 1);

  // A relevant monad duplicates losslessly, so the same square commutes.
  ResidualResult rel = residual_commutes(maybe(), squared, just_x, 2);
  CHECK(rel.commutes);
}

TEST_CASE("one-drop unit diagram") {
  Signature mz({{"mul", 2}, {"zero", 0}});
  Equation absorb = parse_equation("mul(x,zero) = zero", mz, "absorb");
  for (const MonadPtr& t : {powerset(), powerset_nonempty(), maybe(), dist(),
                            reader(2), writer(MonoidTable::z2()),
                            multiset(SemiringTable::f2())}) {
    CAPTURE(t->name());
    CHECK(alphacom_check(t, absorb));
  }
  CHECK_THROWS_AS(alphacom_check(powerset(), idem()), StructuralError);
}

TEST_CASE("reports serialize stably") {
  CheckOptions o;
  o.bounds.max_carrier = 2;
  CheckReport rep = check_preservation(powerset(), idem(), o);
  CHECK(rep.verdict == Verdict::PreservedUpToBound);
  std::string j = rep.to_json();
  CHECK(j == check_preservation(powerset(), idem(), o).to_json());
  CHECK(j.find("\"verdict\"") != std::string::npos);
  CHECK(j.find("\"seed\"") != std::string::npos);
}
