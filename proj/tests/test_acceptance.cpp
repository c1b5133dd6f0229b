#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <monpres/reproduce.hpp>

#include <cstdio>

using namespace monpres;

TEST_CASE("acceptance battery") {
  ReproduceReport rep = run_acceptance();
  REQUIRE_FALSE(rep.results.empty());
  for (const CriterionResult& r : rep.results) {
    std::printf("%s\n", criterion_line(r).c_str());
    std::fflush(stdout);
  }
  for (const CriterionResult& r : rep.results) {
    CAPTURE(r.id);
    CAPTURE(r.name);
    CHECK_MESSAGE(r.passed, r.detail);
  }
  CHECK(rep.all_passed());
}

TEST_CASE("sabotaged strength fails the law battery") {
  ReproduceOptions o;
  o.sabotage_psi = true;
  o.only = {1};
  ReproduceReport rep = run_acceptance(o);
  REQUIRE(rep.results.size() == 1);
  CHECK(rep.results[0].id == 1);
  CHECK_FALSE(rep.results[0].passed);
  CHECK_FALSE(rep.all_passed());
}
