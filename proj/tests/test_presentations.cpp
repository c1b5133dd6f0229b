#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <monpres/presentations.hpp>

#include <nlohmann/json.hpp>

using namespace monpres;

namespace {

MonoidPresentation pres(const std::string& text) { return parse_presentation(text); }

}  // namespace

TEST_CASE("parsing and validation") {
  MonoidPresentation p = pres(
      "# two commuting letters\n"
      "generators: a, b\n"
      "relations: ab = ba\n");
  CHECK(p.generators == std::vector<std::string>{"a", "b"});
  REQUIRE(p.relations.size() == 1);
  CHECK(p.relations[0].first == "ab");
  CHECK(p.relations[0].second == "ba");

  // An empty relation side is the empty word.
  MonoidPresentation q = pres("generators: a\nrelations: aa =\n");
  REQUIRE(q.relations.size() == 1);
  CHECK(q.relations[0].second.empty());

  // Repeated relations lines accumulate.
  MonoidPresentation r = pres("generators: a\nrelations: aa = a\nrelations: aaa = a\n");
  CHECK(r.relations.size() == 2);

  CHECK_THROWS_AS(pres("generators: ab\n"), ParseError);          // multi-character
  CHECK_THROWS_AS(pres("generators: a, a\n"), ParseError);        // duplicate
  CHECK_THROWS_AS(pres("generators: a\nrelations: ab = a\n"), ParseError);  // undeclared
  CHECK_THROWS_AS(pres("relations: a = \n"), ParseError);         // no generators line
  CHECK_THROWS_AS(pres("generators: a\nrelations: aa\n"), ParseError);      // missing =
}

TEST_CASE("json round trip") {
  MonoidPresentation p = pres("generators: a, b\nrelations: ab = ba; aa =\n");
  MonoidPresentation back = presentation_from_json_text(presentation_to_json_text(p));
  CHECK(back.generators == p.generators);
  CHECK(back.relations == p.relations);
}

TEST_CASE("encoding as a unary theory") {
  MonoidPresentation p = pres("generators: a, b\nrelations: ab = ba\n");
  Theory th = encode_as_theory(p);
  CHECK(th.sig.size() == 2);
  CHECK(th.sig.at(0).name == "f_a");
  CHECK(th.sig.at(0).arity == 1);
  REQUIRE(th.equations.size() == 1);
  CHECK(pretty(th.equations[0].lhs) == "f_a(f_b(x))");
  CHECK(pretty(th.equations[0].rhs) == "f_b(f_a(x))");

  // The empty word is the bare variable.
  Theory unit_th = encode_as_theory(pres("generators: a\nrelations: aa =\n"));
  CHECK(pretty(unit_th.equations[0].rhs) == "x");
}

TEST_CASE("triviality verdicts") {
  TrivialityReport forced = t1_triviality(pres("generators: a\nrelations: a =\n"));
  CHECK(forced.verdict == Triviality::Trivial);
  REQUIRE(forced.traces.size() == 1);
  CHECK(forced.traces[0].front() == "a");
  CHECK(forced.traces[0].back().empty());

  // One generator forced to the unit through the other.
  TrivialityReport chained = t1_triviality(pres("generators: a, b\nrelations: a = b; b =\n"));
  CHECK(chained.verdict == Triviality::Trivial);
  CHECK(chained.traces.size() == 2);

  // Mutually inverse generators present the integers: plenty of finite quotients.
  TrivialityReport invertible =
      t1_triviality(pres("generators: a, b\nrelations: ab = ; ba =\n"));
  CHECK(invertible.verdict == Triviality::NonTrivial);

  TrivialityReport z2 = t1_triviality(pres("generators: a\nrelations: aa =\n"));
  CHECK(z2.verdict == Triviality::NonTrivial);
  REQUIRE(z2.countermodel.has_value());
  CHECK(z2.countermodel->monoid.size == 2);
  CHECK(z2.countermodel->images.at("a") == 1);

  TrivialityReport free_a = t1_triviality(pres("generators: a\n"));
  CHECK(free_a.verdict == Triviality::NonTrivial);

  TrivialityReport comm = t1_triviality(pres("generators: a, b\nrelations: ab = ba\n"));
  CHECK(comm.verdict == Triviality::NonTrivial);

  // Starved budgets cannot settle the free generator either way.
  TrivialityReport starved = t1_triviality(pres("generators: a\n"), 10, 1);
  CHECK(starved.verdict == Triviality::Unknown);
  CHECK(starved.rewrite_budget == 10);
  CHECK(starved.model_bound == 1);
}

TEST_CASE("affineness of presented monoids") {
  PropVerdict yes = affineness_of_presented(pres("generators: a\nrelations: a =\n"));
  CHECK(yes.status == PropStatus::Yes);
  CHECK_FALSE(yes.certificate.empty());

  PropVerdict no = affineness_of_presented(pres("generators: a\nrelations: aa =\n"));
  CHECK(no.status == PropStatus::No);

  PropVerdict unknown = affineness_of_presented(pres("generators: a\n"), 10, 1);
  CHECK(unknown.status == PropStatus::UnknownUpTo);

  // The verdicts agree with the concrete writer instances over the same monoids.
  CHECK(is_affine(*writer(MonoidTable::trivial())).status == PropStatus::Yes);
  CHECK(is_affine(*writer(MonoidTable::z2())).status == PropStatus::No);
}

TEST_CASE("reports serialize") {
  auto j = nlohmann::json::parse(t1_triviality(pres("generators: a\nrelations: aa =\n")).to_json());
  CHECK(j["verdict"] == "NonTrivial");
  CHECK(j["countermodel"].is_object());
}
