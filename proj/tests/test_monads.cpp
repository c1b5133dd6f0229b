#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <monpres/monads.hpp>

#include <nlohmann/json.hpp>

#include <vector>

using namespace monpres;

namespace {

std::vector<MonadPtr> enumerable_builtins() {
  return {powerset(),        powerset_nonempty(),       maybe(),
          reader(2),         writer(MonoidTable::z2()), multiset(SemiringTable::f2())};
}

}  // namespace

TEST_CASE("carrier counts") {
  struct Row {
    MonadPtr t;
    std::vector<int> counts;  // over fin(0..3)
  };
  std::vector<Row> rows{
      {powerset(), {1, 2, 4, 8}},
      {powerset_nonempty(), {0, 1, 3, 7}},
      {maybe(), {1, 2, 3, 4}},
      {reader(2), {0, 1, 4, 9}},
      {writer(MonoidTable::z2()), {0, 2, 4, 6}},
      {multiset(SemiringTable::f2()), {1, 2, 4, 8}},
  };
  for (const Row& r : rows) {
    for (int n = 0; n <= 3; ++n) {
      CAPTURE(r.t->name());
      CAPTURE(n);
      CHECK(r.t->carrier_count(fin(n)) == r.counts[static_cast<std::size_t>(n)]);
    }
  }
}

TEST_CASE("carrier_at and index_of round trip") {
  for (const MonadPtr& t : enumerable_builtins()) {
    FinSet x = fin(3);
    std::uint64_t n = enumerable_size(*t, x);
    for (std::uint64_t i = 0; i < n; ++i) {
      TObject u = t->carrier_at(x, i);
      CAPTURE(t->name());
      CHECK(t->index_of(u) == i);
    }
  }
}

TEST_CASE("t1 counts") {
  CHECK(powerset()->t1_count() == 2);
  CHECK(powerset_nonempty()->t1_count() == 1);
  CHECK(maybe()->t1_count() == 2);
  CHECK(dist()->t1_count() == 1);
  CHECK(reader(2)->t1_count() == 1);
  CHECK(writer(MonoidTable::z2())->t1_count() == 2);
  CHECK(writer(MonoidTable::trivial())->t1_count() == 1);
  CHECK(multiset(SemiringTable::f2())->t1_count() == 2);
  CHECK(multiset(SemiringTable::trivial())->t1_count() == 1);
}

TEST_CASE("powerset structure") {
  MonadPtr t = powerset();
  FinSet x = fin(3);
  TObject s = t->unit(x, 1);
  CHECK(std::get<Subset>(s.payload).in == std::vector<bool>{false, true, false});

  FinFun f{3, 2, {0, 0, 1}};
  TObject u{3, Subset{{true, false, true}}};
  TObject fu = t->map(f, u);
  CHECK(std::get<Subset>(fu.payload).in == std::vector<bool>{true, true});

  TObject v{2, Subset{{false, true}}};
  TObject p = t->psi(u, v, x, fin(2));
  CHECK(p.base == 6);
  // pairs (0,1) and (2,1): indices 1 and 5
  CHECK(std::get<Subset>(p.payload).in ==
        std::vector<bool>{false, true, false, false, false, true});

  // flatten: outer {0,2} over three inner subsets takes the union of 0 and 2.
  TObject outer{3, Subset{{true, false, true}}};
  std::vector<TObject> inner{TObject{3, Subset{{true, false, false}}},
                             TObject{3, Subset{{false, true, false}}},
                             TObject{3, Subset{{false, false, true}}}};
  TObject fl = t->flatten(outer, inner, x);
  CHECK(std::get<Subset>(fl.payload).in == std::vector<bool>{true, false, true});
}

TEST_CASE("maybe structure") {
  MonadPtr t = maybe();
  FinSet x = fin(2);
  CHECK(std::get<MaybeElem>(t->unit(x, 1).payload).value == 1);
  TObject nothing{2, MaybeElem{2}};
  TObject just0{2, MaybeElem{0}};
  TObject p = t->psi(just0, nothing, x, x);
  CHECK(std::get<MaybeElem>(p.payload).value == 4);  // the added point over 2x2
  TObject q = t->psi(just0, t->unit(x, 1), x, x);
  CHECK(std::get<MaybeElem>(q.payload).value == 1);  // (0,1)
}

TEST_CASE("writer structure") {
  MonadPtr t = writer(MonoidTable::z2());
  FinSet x = fin(2);
  TObject a{2, WriterElem{1, 0}};
  TObject b{2, WriterElem{1, 1}};
  TObject p = t->psi(a, b, x, x);
  const auto& w = std::get<WriterElem>(p.payload);
  CHECK(w.mon == 0);  // 1 + 1 = 0 in Z2
  CHECK(w.value == 1);  // (0,1)
}

TEST_CASE("reader structure") {
  MonadPtr t = reader(2);
  FinSet x = fin(3);
  TObject a{3, ReaderElem{{0, 2}}};
  TObject b{3, ReaderElem{{1, 1}}};
  TObject p = t->psi(a, b, x, x);
  const auto& r = std::get<ReaderElem>(p.payload);
  CHECK(r.table == std::vector<int>{1, 7});  // (0,1) and (2,1)
}

TEST_CASE("multiset structure") {
  MonadPtr t = multiset(SemiringTable::f2());
  FinSet x = fin(2);
  TObject u{2, MultisetElem{{1, 1}}};
  TObject v{2, MultisetElem{{1, 0}}};
  TObject p = t->psi(u, v, x, x);
  CHECK(std::get<MultisetElem>(p.payload).coeff == std::vector<int>{1, 0, 1, 0});

  // flatten adds coefficients: x0 + x1 both mapping to the same inner element.
  TObject outer{2, MultisetElem{{1, 1}}};
  std::vector<TObject> inner{TObject{2, MultisetElem{{1, 0}}},
                             TObject{2, MultisetElem{{1, 0}}}};
  TObject fl = t->flatten(outer, inner, x);
  CHECK(std::get<MultisetElem>(fl.payload).coeff == std::vector<int>{0, 0});  // 1+1=0 in F2
}

TEST_CASE("dist structure") {
  MonadPtr t = dist();
  CHECK(t->tier() == Tier::Sampleable);
  FinSet x = fin(2);
  TObject pt = t->unit(x, 0);
  CHECK(std::get<DistElem>(pt.payload).weight == std::vector<Rational>{1, 0});

  TObject u{2, DistElem{{Rational(1, 2), Rational(1, 2)}}};
  TObject p = t->psi(u, u, x, x);
  const auto& w = std::get<DistElem>(p.payload);
  for (int i = 0; i < 4; ++i) CHECK(w.weight[static_cast<std::size_t>(i)] == Rational(1, 4));

  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    TObject s = t->random_element(x, rng);
    Rational total = 0;
    for (const Rational& q : std::get<DistElem>(s.payload).weight) {
      CHECK(q >= 0);
      total += q;
    }
    CHECK(total == 1);
  }
  CHECK_THROWS_AS(enumerate_carrier(*t, x), CapabilityError);
}

TEST_CASE("derived structure maps") {
  MonadPtr t = powerset();
  FinSet x = fin(2);
  CHECK(psi0(*t) == t->unit(terminal(), 0));

  std::vector<FinSet> xs{x, x, x};
  std::vector<TObject> us{TObject{2, Subset{{true, false}}}, TObject{2, Subset{{true, true}}},
                          TObject{2, Subset{{false, true}}}};
  TObject w = psi_n(*t, xs, us);
  CHECK(w.base == 8);
  // {0} x {0,1} x {1}: tuples (0,0,1) and (0,1,1) -> indices 1 and 3
  CHECK(std::get<Subset>(w.payload).in ==
        std::vector<bool>{false, true, false, true, false, false, false, false});

  TObject pair = t->psi(us[0], us[1], x, x);
  auto [cu, cv] = chi(*t, x, x, pair);
  CHECK(cu == us[0]);
  CHECK(cv == us[1]);

  std::vector<TObject> parts = chi_n(*t, xs, w);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == us[0]);
  CHECK(parts[1] == us[1]);
  CHECK(parts[2] == us[2]);
}

TEST_CASE("index-space tables") {
  MonadPtr t = maybe();
  FinSet x = fin(2);
  FinFun u = unit_fun(*t, x);
  CHECK(u.dom == 2);
  CHECK(u.cod == 3);
  for (int v = 0; v < 2; ++v) CHECK(t->carrier_at(x, static_cast<std::uint64_t>(u(v))) == t->unit(x, v));

  FinFun f{2, 2, {1, 0}};
  FinFun tf = map_fun(*t, f, x, x);
  CHECK(tf.dom == 3);
  for (std::uint64_t i = 0; i < 3; ++i)
    CHECK(t->carrier_at(x, static_cast<std::uint64_t>(tf(static_cast<int>(i)))) ==
          t->map(f, t->carrier_at(x, i)));

  FinFun mu = mult_fun(*t, x);
  CHECK(mu.cod == 3);
}

TEST_CASE("selectors") {
  CHECK(parse_monad("powerset")->name() == powerset()->name());
  CHECK(parse_monad("powerset+")->name() == powerset_nonempty()->name());
  CHECK(parse_monad("maybe")->name() == maybe()->name());
  CHECK(parse_monad("dist")->tier() == Tier::Sampleable);
  CHECK(reader_exponent(*parse_monad("reader:3")) == 3);
  CHECK_THROWS_AS(parse_monad("frobnicate"), StructuralError);
  CHECK_THROWS_AS(parse_monad("reader:x"), StructuralError);

  CHECK(multiset_semiring(*powerset()) == nullptr);
  const SemiringTable* s = multiset_semiring(*multiset(SemiringTable::f2()));
  REQUIRE(s != nullptr);
  CHECK(s->size == 2);
  const MonoidTable* m = writer_monoid(*writer(MonoidTable::z2()));
  REQUIRE(m != nullptr);
  CHECK(m->size == 2);
}

TEST_CASE("tobject json is well formed") {
  for (const MonadPtr& t : enumerable_builtins()) {
    TObject u = t->carrier_at(fin(2), 0);
    auto j = nlohmann::json::parse(tobject_json(u));
    CHECK(j.is_object());
  }
  CHECK_FALSE(to_string(powerset()->unit(fin(2), 0)).empty());
}
