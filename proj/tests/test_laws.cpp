#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <monpres/laws.hpp>

#include <vector>

using namespace monpres;

namespace {

LawOptions quick() {
  LawOptions o;
  o.exhaustive_max = 2;
  o.spot_size = 3;
  o.spot_samples = 20;
  o.dist_samples = 60;
  o.seed = 1;
  return o;
}

// Delegates everything to an honest monad but returns garbage from psi, so the
// monoidal battery must notice.
class BrokenPsi : public Monad {
 public:
  explicit BrokenPsi(MonadPtr inner) : Monad(inner->name() + "-broken"), inner_(std::move(inner)) {}

  Tier tier() const override { return inner_->tier(); }
  BigInt carrier_count(const FinSet& x) const override { return inner_->carrier_count(x); }
  TObject carrier_at(const FinSet& x, std::uint64_t i) const override {
    return inner_->carrier_at(x, i);
  }
  std::uint64_t index_of(const TObject& u) const override { return inner_->index_of(u); }
  TObject random_element(const FinSet& x, Rng& rng) const override {
    return inner_->random_element(x, rng);
  }
  TObject unit(const FinSet& x, int v) const override { return inner_->unit(x, v); }
  TObject map(const FinFun& f, const TObject& u) const override { return inner_->map(f, u); }
  TObject flatten(const TObject& outer, std::span<const TObject> inner,
                  const FinSet& x) const override {
    return inner_->flatten(outer, inner, x);
  }
  TObject psi(const TObject& u, const TObject& v, const FinSet& x, const FinSet& y) const override {
    TObject honest = inner_->psi(u, v, x, y);
    if (honest.base == 0) return honest;
    return inner_->unit(fin(honest.base), 0);
  }

 private:
  MonadPtr inner_;
};

}  // namespace

TEST_CASE("all builtins pass the law battery") {
  std::vector<MonadPtr> ts{powerset(),
                           powerset_nonempty(),
                           maybe(),
                           dist(),
                           reader(2),
                           writer(MonoidTable::z2()),
                           writer(MonoidTable::trivial()),
                           multiset(SemiringTable::f2()),
                           multiset(SemiringTable::boolean()),
                           multiset(SemiringTable::trivial())};
  for (const MonadPtr& t : ts) {
    CAPTURE(t->name());
    LawStats stats;
    auto failure = check_all_laws(*t, quick(), &stats);
    if (failure) {
      CAPTURE(failure->law);
      CAPTURE(failure->detail);
    }
    CHECK_FALSE(failure.has_value());
    CHECK(stats.instances > 0);
  }
}

TEST_CASE("individual batteries run clean on powerset") {
  MonadPtr t = powerset();
  CHECK_FALSE(check_functor_laws(*t, quick()).has_value());
  CHECK_FALSE(check_monad_laws(*t, quick()).has_value());
  CHECK_FALSE(check_monoidal_laws(*t, quick()).has_value());
  CHECK_FALSE(check_naturality(*t, quick()).has_value());
  CHECK_FALSE(check_diagonal_identity(*t, quick()).has_value());
}

TEST_CASE("oversized instances refuse rather than truncate") {
  // Multiplication associativity for reader(3) needs tables over a base the
  // third power of |T(TX)|, which blows past any sane budget already at |X| = 2.
  CHECK_THROWS_AS(check_all_laws(*reader(3), quick()), BudgetError);
}

TEST_CASE("a broken strength is caught") {
  auto broken = std::make_shared<BrokenPsi>(powerset());
  auto failure = check_all_laws(*broken, quick());
  REQUIRE(failure.has_value());
  CHECK_FALSE(failure->law.empty());
  CHECK_FALSE(failure->detail.empty());
}

TEST_CASE("law failures are deterministic") {
  auto broken = std::make_shared<BrokenPsi>(maybe());
  auto a = check_all_laws(*broken, quick());
  auto b = check_all_laws(*broken, quick());
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->law == b->law);
  CHECK(a->detail == b->detail);
}
