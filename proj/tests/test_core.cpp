#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <monpres/core.hpp>

#include <set>
#include <vector>

using namespace monpres;

TEST_CASE("finfun basics") {
  FinFun id = FinFun::identity(3);
  CHECK(id.dom == 3);
  CHECK(id.cod == 3);
  CHECK(id(0) == 0);
  CHECK(id(2) == 2);

  FinFun c = FinFun::constant(4, 2, 1);
  CHECK(c.table == std::vector<int>{1, 1, 1, 1});
  CHECK_NOTHROW(validate(c));

  FinFun f{2, 3, {2, 0}};
  FinFun g{3, 2, {1, 1, 0}};
  FinFun gf = compose(g, f);
  CHECK(gf.dom == 2);
  CHECK(gf.cod == 2);
  CHECK(gf(0) == 0);  // g(f(0)) = g(2) = 0
  CHECK(gf(1) == 1);

  FinFun bad{2, 2, {0, 2}};
  CHECK_THROWS_AS(validate(bad), StructuralError);
  CHECK_THROWS_AS(compose(g, g), StructuralError);  // cod/dom mismatch
}

TEST_CASE("product indexing is leftmost-most-significant") {
  std::vector<FinSet> factors{fin(2), fin(3)};
  ProductSet p = product(factors);
  CHECK(p.set.size == 6);
  std::vector<int> t{1, 0};
  CHECK(p.index_of(t) == 3);
  CHECK(p.tuple_of(3) == std::vector<int>{1, 0});
  CHECK(p.tuple_of(5) == std::vector<int>{1, 2});

  ProductSet q = power(fin(3), 2);
  CHECK(q.set.size == 9);
  std::vector<int> u{2, 1};
  CHECK(q.index_of(u) == 7);

  // Round trip every index.
  for (int i = 0; i < q.set.size; ++i) CHECK(q.index_of(q.tuple_of(i)) == i);
}

TEST_CASE("structural maps") {
  ProductSet p = product(std::vector<FinSet>{fin(2), fin(3)});
  FinFun p0 = projection(p, 0);
  FinFun p1 = projection(p, 1);
  CHECK(p0(4) == 1);  // 4 = (1,1)
  CHECK(p1(5) == 2);

  FinFun d = diagonal(fin(3), 2);
  CHECK(d.cod == 9);
  CHECK(d(2) == 8);  // (2,2)

  FinFun s = swap_pair(fin(2), fin(3));
  CHECK(s.dom == 6);
  CHECK(s.cod == 6);
  CHECK(s(1) == 2);  // (0,1) -> (1,0) in the 3x2 product

  FinFun b = bang(fin(5));
  CHECK(b.cod == 1);
  CHECK(b(4) == 0);

  std::vector<FinFun> fs{FinFun{2, 3, {1, 2}}, FinFun{2, 2, {0, 1}}};
  FinFun t = tuple_fun(fs);
  CHECK(t.dom == 2);
  CHECK(t.cod == 6);
  CHECK(t(0) == 2);  // (1,0)
  CHECK(t(1) == 5);  // (2,1)

  FinFun pr = pair_fun(FinFun{2, 2, {1, 0}}, FinFun{3, 3, {0, 0, 0}});
  CHECK(pr.dom == 6);
  CHECK(pr(0) == 3);  // (0,0) -> (1,0)

  std::vector<int> coords{2, 0, 0};
  FinFun sel = select_coords(2, 3, coords);
  CHECK(sel.dom == 8);
  CHECK(sel.cod == 8);
  // (a,b,c) -> (c,a,a); input (1,0,1)=5 -> (1,1,1)=7
  CHECK(sel(5) == 7);
}

TEST_CASE("map enumeration") {
  MapRange r = enumerate_maps(fin(2), fin(3));
  CHECK(r.count() == 9);
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> order;
  for (const FinFun& f : r) {
    CHECK(f.dom == 2);
    CHECK(f.cod == 3);
    CHECK_NOTHROW(validate(f));
    seen.insert(f.table);
    order.push_back(f.table);
  }
  CHECK(seen.size() == 9);
  // Lexicographic over the table, last slot fastest.
  CHECK(order.front() == std::vector<int>{0, 0});
  CHECK(order[1] == std::vector<int>{0, 1});
  CHECK(order.back() == std::vector<int>{2, 2});

  MapRange small = enumerate_maps(fin(2), fin(3), 4);
  CHECK(small.count() == 9);
  CHECK_THROWS_AS(small.begin(), BudgetError);
}

TEST_CASE("semiring and monoid tables") {
  SemiringTable f2 = SemiringTable::f2();
  CHECK_FALSE(validate_semiring(f2).has_value());
  CHECK(f2.plus(1, 1) == 0);
  CHECK(f2.times(1, 1) == 1);
  CHECK(f2.commutative_mul());

  SemiringTable b = SemiringTable::boolean();
  CHECK_FALSE(validate_semiring(b).has_value());
  CHECK(b.plus(1, 1) == 1);

  CHECK_FALSE(validate_semiring(SemiringTable::trivial()).has_value());

  SemiringTable broken = f2;
  broken.add = {1, 1, 1, 0};  // zero is no longer additively neutral
  auto v = validate_semiring(broken);
  REQUIRE(v.has_value());
  CHECK_FALSE(v->axiom.empty());

  MonoidTable z2 = MonoidTable::z2();
  CHECK_FALSE(validate_monoid(z2).has_value());
  CHECK(z2.times(1, 1) == 0);
  CHECK(z2.commutative);

  MonoidTable nonassoc;
  nonassoc.size = 3;
  nonassoc.unit = 0;
  nonassoc.op = {0, 1, 2, 1, 0, 0, 2, 0, 1};
  auto mv = validate_monoid(nonassoc);
  REQUIRE(mv.has_value());
}

TEST_CASE("table json round trips") {
  SemiringTable f2 = SemiringTable::f2();
  SemiringTable back = semiring_from_json_text(semiring_to_json_text(f2));
  CHECK(back.size == f2.size);
  CHECK(back.add == f2.add);
  CHECK(back.mul == f2.mul);
  CHECK(back.zero == f2.zero);
  CHECK(back.one == f2.one);

  MonoidTable z2 = MonoidTable::z2();
  MonoidTable mb = monoid_from_json_text(monoid_to_json_text(z2));
  CHECK(mb.size == 2);
  CHECK(mb.op == z2.op);
  CHECK(mb.unit == 0);
  CHECK(mb.commutative);

  CHECK_THROWS(monoid_from_json_text("{\"size\": 2}"));
  // Tables must satisfy the axioms to load at all.
  CHECK_THROWS(monoid_from_json_text(
      "{\"size\": 2, \"op\": [1, 1, 1, 1], \"unit\": 0}"));
}

TEST_CASE("rng determinism") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  Rng c(42);
  std::uint64_t first = c.below(7);
  CHECK(first < 7);
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
  CHECK(mix_seed(1, 2) != mix_seed(2, 2));
}
