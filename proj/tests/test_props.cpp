#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <monpres/props.hpp>

#include <nlohmann/json.hpp>

#include <vector>

using namespace monpres;

namespace {

const Signature& sig_mul() {
  static const Signature s({{"mul", 2}});
  return s;
}

}  // namespace

TEST_CASE("affineness of the builtins") {
  CHECK(is_affine(*powerset()).status == PropStatus::No);
  CHECK(is_affine(*powerset_nonempty()).status == PropStatus::Yes);
  CHECK(is_affine(*dist()).status == PropStatus::Yes);
  CHECK(is_affine(*maybe()).status == PropStatus::No);
  CHECK(is_affine(*reader(2)).status == PropStatus::Yes);
  CHECK(is_affine(*writer(MonoidTable::trivial())).status == PropStatus::Yes);
  CHECK(is_affine(*writer(MonoidTable::z2())).status == PropStatus::No);
  CHECK(is_affine(*multiset(SemiringTable::trivial())).status == PropStatus::Yes);
  CHECK(is_affine(*multiset(SemiringTable::f2())).status == PropStatus::No);

  PropVerdict yes = is_affine(*reader(2));
  CHECK_FALSE(yes.certificate.empty());
  PropVerdict no = is_affine(*powerset());
  REQUIRE(no.witness.has_value());
  CHECK(no.witness->elements.size() == 2);
}

TEST_CASE("relevance of the builtins") {
  struct Row {
    MonadPtr t;
    PropStatus status;
    int witness_size;  // only when No
  };
  std::vector<Row> rows{
      {powerset(), PropStatus::No, 2},
      {powerset_nonempty(), PropStatus::No, 2},
      {dist(), PropStatus::No, 2},
      {maybe(), PropStatus::Yes, 0},
      {reader(2), PropStatus::Yes, 0},
      {writer(MonoidTable::trivial()), PropStatus::Yes, 0},
      {writer(MonoidTable::z2()), PropStatus::No, 1},
      {multiset(SemiringTable::trivial()), PropStatus::Yes, 0},
      {multiset(SemiringTable::f2()), PropStatus::No, 2},
  };
  for (const Row& r : rows) {
    CAPTURE(r.t->name());
    PropVerdict v = relevance_check(r.t);
    CHECK(v.status == r.status);
    if (r.status == PropStatus::No) {
      REQUIRE(v.witness.has_value());
      CHECK(v.witness->set_size == r.witness_size);
      CHECK(v.witness->lhs != v.witness->rhs);
    } else {
      CHECK_FALSE(v.certificate.empty());
    }
  }
}

TEST_CASE("n-relevance") {
  // Z2 satisfies w^3 = w but not w^2 = w.
  CHECK(n_relevance_check(writer(MonoidTable::z2()), 2).status == PropStatus::No);
  PropVerdict cubed = n_relevance_check(writer(MonoidTable::z2()), 3);
  CHECK(cubed.status == PropStatus::Yes);
  CHECK_FALSE(cubed.certificate.empty());

  CHECK(n_relevance_check(maybe(), 2).status == PropStatus::Yes);
  CHECK(n_relevance_check(maybe(), 3).status == PropStatus::Yes);
  CHECK(n_relevance_check(powerset(), 2).status == PropStatus::No);
  CHECK(n_relevance_check(dist(), 2).status == PropStatus::No);

  CHECK_THROWS_AS(n_relevance_check(maybe(), 1), StructuralError);
}

TEST_CASE("affine and n-relevant forces relevant, instance-wise") {
  for (const MonadPtr& t : {powerset(), powerset_nonempty(), maybe(), dist(), reader(2),
                            writer(MonoidTable::z2()), writer(MonoidTable::trivial()),
                            multiset(SemiringTable::f2()), multiset(SemiringTable::trivial())}) {
    CAPTURE(t->name());
    CHECK(relevant_and_affine_implies_relevant_test(t, 2));
    CHECK(relevant_and_affine_implies_relevant_test(t, 3));
  }
}

TEST_CASE("algebraic relevance matches the diagram form") {
  CHECK(algebraic_relevance_check(powerset()).status == PropStatus::No);
  CHECK(algebraic_relevance_check(powerset_nonempty()).status == PropStatus::No);
  CHECK(algebraic_relevance_check(multiset(SemiringTable::f2())).status == PropStatus::No);
  CHECK(algebraic_relevance_check(writer(MonoidTable::z2())).status == PropStatus::No);
  CHECK(algebraic_relevance_check(maybe()).status == PropStatus::Yes);
  CHECK(algebraic_relevance_check(reader(2)).status == PropStatus::Yes);

  PropVerdict no = algebraic_relevance_check(powerset());
  REQUIRE(no.witness.has_value());
  CHECK(no.witness->set_size == 2);

  // Budget too small for even the unary carrier: conclusively unknown.
  PropVerdict starved = algebraic_relevance_check(powerset(), 3, 1);
  CHECK(starved.status == PropStatus::UnknownUpTo);
  CHECK(starved.bound == 0);

  CHECK_THROWS_AS(algebraic_relevance_check(dist()), CapabilityError);
}

TEST_CASE("discerning verdicts") {
  Equation idem = parse_equation("mul(x,x) = x", sig_mul(), "idem");
  DiscerningReport rep = two_discerning_check(idem);
  CHECK(rep.verdict == Discernment::Discerning);
  REQUIRE(rep.countermodel.has_value());
  CHECK(satisfies(*rep.countermodel, idem).holds);
  const Equation& comp = rep.companion.companion;
  REQUIRE(rep.countermodel_assignment.size() == comp.vars.size());
  int lhs = interpret(*rep.countermodel, comp.lhs, comp.vars, rep.countermodel_assignment);
  int rhs = interpret(*rep.countermodel, comp.rhs, comp.vars, rep.countermodel_assignment);
  CHECK(lhs != rhs);

  Equation dup_ll = parse_equation("mul(mul(y,y),x) = mul(y,x)", sig_mul());
  CHECK(two_discerning_check(dup_ll).verdict == Discernment::Discerning);

  Equation derivable = parse_equation("mul(x,mul(y,y)) = mul(y,x)", sig_mul());
  DiscerningReport nd = two_discerning_check(derivable);
  CHECK(nd.verdict == Discernment::NotDiscerning);
  CHECK(nd.derivation.size() >= 2);
  CHECK(nd.derivation.front() == pretty(nd.companion.companion.lhs));
  CHECK(nd.derivation.back() == pretty(nd.companion.companion.rhs));

  Signature mz({{"mul", 2}, {"zero", 0}});
  Equation absorb = parse_equation("mul(x,zero) = zero", mz);
  CHECK_THROWS_AS(two_discerning_check(absorb), StructuralError);

  DiscerningOptions starved;
  starved.model_bound = 1;
  starved.derivation_depth = 1;
  starved.visited_budget = 5;
  DiscerningReport unknown = two_discerning_check(idem, starved);
  CHECK(unknown.verdict == Discernment::Unknown);
}

TEST_CASE("verdicts serialize to json") {
  auto j = nlohmann::json::parse(relevance_check(powerset()).to_json());
  CHECK(j["status"] == "No");
  CHECK(j["witness"].is_object());

  auto d = nlohmann::json::parse(
      two_discerning_check(parse_equation("mul(x,x) = x", sig_mul())).to_json());
  CHECK(d["verdict"] == "Discerning");
  CHECK(d["companion"].is_object());
}
