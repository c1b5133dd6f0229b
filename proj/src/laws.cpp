#include "monpres/laws.hpp"

#include <array>
#include <sstream>

namespace monpres {

namespace {

void bump(LawStats* s) {
  if (s) ++s->instances;
}

LawFailure fail(const std::string& law, const std::string& detail) { return {law, detail}; }

std::string show2(const TObject& a, const TObject& b) {
  return "got " + to_string(a) + ", expected " + to_string(b);
}

FinFun random_fun(const FinSet& dom, const FinSet& cod, Rng& rng) {
  FinFun f{dom.size, cod.size, std::vector<int>(static_cast<std::size_t>(dom.size))};
  for (int i = 0; i < dom.size; ++i) f.table[static_cast<std::size_t>(i)] = rng.below_int(cod.size);
  return f;
}

std::vector<TObject> elements_of(const Monad& t, const FinSet& x, bool exhaustive, int samples,
                                 Rng& rng, std::uint64_t budget) {
  if (exhaustive) return enumerate_carrier(t, x, budget);
  std::vector<TObject> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) out.push_back(t.random_element(x, rng));
  return out;
}

// Base sizes with, for each, whether elements over it are enumerated or sampled.
struct SizePlan {
  int size;
  bool exhaustive;
};

std::vector<SizePlan> unary_plan(const Monad& t, const LawOptions& o) {
  std::vector<SizePlan> plan;
  if (t.tier() == Tier::Enumerable) {
    for (int n = 1; n <= o.exhaustive_max; ++n) plan.push_back({n, true});
    plan.push_back({o.spot_size, false});
  } else {
    for (int n = 1; n <= o.spot_size; ++n) plan.push_back({n, false});
  }
  return plan;
}

std::vector<std::array<SizePlan, 2>> binary_plan(const Monad& t, const LawOptions& o) {
  std::vector<std::array<SizePlan, 2>> plan;
  if (t.tier() == Tier::Enumerable) {
    for (int a = 1; a <= o.exhaustive_max; ++a)
      for (int b = 1; b <= o.exhaustive_max; ++b)
        plan.push_back({SizePlan{a, true}, SizePlan{b, true}});
    plan.push_back({SizePlan{o.spot_size, false}, SizePlan{2, false}});
    plan.push_back({SizePlan{2, false}, SizePlan{o.spot_size, false}});
  } else {
    plan.push_back({SizePlan{1, false}, SizePlan{2, false}});
    plan.push_back({SizePlan{2, false}, SizePlan{2, false}});
    plan.push_back({SizePlan{2, false}, SizePlan{3, false}});
    plan.push_back({SizePlan{3, false}, SizePlan{2, false}});
  }
  return plan;
}

int samples_for(const Monad& t, const LawOptions& o) {
  return t.tier() == Tier::Enumerable ? o.spot_samples : o.dist_samples;
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<LawFailure> check_functor_laws(const Monad& t, const LawOptions& o, LawStats* st) {
  Rng rng(mix_seed(o.seed, 11));
  for (const SizePlan& p : unary_plan(t, o)) {
    FinSet x = fin(p.size);
    auto us = elements_of(t, x, p.exhaustive, samples_for(t, o), rng, o.budget);
    FinFun id = FinFun::identity(x.size);
    for (const TObject& u : us) {
      bump(st);
      if (t.map(id, u) != u)
        return fail("functor-identity", "size " + std::to_string(p.size) + ": " + to_string(u));
    }
    for (int trial = 0; trial < 4; ++trial) {
      FinSet y = fin(1 + rng.below_int(3));
      FinSet z = fin(1 + rng.below_int(3));
      FinFun f = random_fun(x, y, rng);
      FinFun g = random_fun(y, z, rng);
      FinFun gf = compose(g, f);
      for (const TObject& u : us) {
        bump(st);
        TObject lhs = t.map(gf, u);
        TObject rhs = t.map(g, t.map(f, u));
        if (lhs != rhs) return fail("functor-composition", show2(lhs, rhs));
      }
      for (int v = 0; v < x.size; ++v) {
        bump(st);
        TObject lhs = t.map(f, t.unit(x, v));
        TObject rhs = t.unit(y, f(v));
        if (lhs != rhs) return fail("unit-naturality", show2(lhs, rhs));
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

// One layer of explicit nesting: an outer element over fin(|pool|) plus the
// pool it indexes. Works for both tiers; the enumerable tier uses full pools.
struct Nested {
  TObject outer;
  std::vector<TObject> pool;
};

std::vector<Nested> nestings_of(const Monad& t, const FinSet& x, bool exhaustive, int samples,
                                Rng& rng, std::uint64_t budget) {
  std::vector<Nested> out;
  if (exhaustive) {
    std::vector<TObject> pool = enumerate_carrier(t, x, budget);
    FinSet idx = fin(static_cast<int>(pool.size()));
    for (const TObject& u : enumerate_carrier(t, idx, budget)) out.push_back({u, pool});
  } else {
    for (int i = 0; i < samples; ++i) {
      int k = 1 + rng.below_int(3);
      std::vector<TObject> pool;
      for (int j = 0; j < k; ++j) pool.push_back(t.random_element(x, rng));
      out.push_back({t.random_element(fin(k), rng), pool});
    }
  }
  return out;
}

}  // namespace

std::optional<LawFailure> check_monad_laws(const Monad& t, const LawOptions& o, LawStats* st) {
  Rng rng(mix_seed(o.seed, 22));
  int samples = samples_for(t, o);
  for (const SizePlan& p : unary_plan(t, o)) {
    FinSet x = fin(p.size);
    auto us = elements_of(t, x, p.exhaustive, samples, rng, o.budget);

    // mult after unit-at-TX, and mult after T(unit), are both the identity.
    for (const TObject& u : us) {
      bump(st);
      std::vector<TObject> singleton{u};
      TObject lhs = t.flatten(t.unit(terminal(), 0), singleton, x);
      if (lhs != u) return fail("left-unit", show2(lhs, u));
    }
    for (const TObject& u : us) {
      bump(st);
      std::vector<TObject> units;
      units.reserve(static_cast<std::size_t>(x.size));
      for (int v = 0; v < x.size; ++v) units.push_back(t.unit(x, v));
      // T(unit) re-indexes u over fin(|X|) with identical structure.
      TObject outer = u;
      TObject rhs = t.flatten(outer, units, x);
      if (rhs != u) return fail("right-unit", show2(rhs, u));
    }

    // Associativity: flatten the outer two layers first, or the inner two.
    if (p.exhaustive) {
      std::vector<TObject> pool = enumerate_carrier(t, x, o.budget);
      FinSet mid_idx = fin(static_cast<int>(pool.size()));
      std::vector<TObject> mids = enumerate_carrier(t, mid_idx, o.budget);
      FinSet top_idx = fin(static_cast<int>(mids.size()));
      FinFun mu = mult_fun(t, x, o.budget);  // fin(|mids|) -> fin(|pool|)
      for (const TObject& w : enumerate_carrier(t, top_idx, o.budget)) {
        bump(st);
        TObject via_inner = t.flatten(t.map(mu, w), pool, x);
        TObject via_outer = t.flatten(t.flatten(w, mids, mid_idx), pool, x);
        if (via_inner != via_outer)
          return fail("mult-associativity",
                      "size " + std::to_string(p.size) + ": " + show2(via_inner, via_outer));
      }
    } else {
      for (int i = 0; i < samples; ++i) {
        bump(st);
        int k = 1 + rng.below_int(3);
        std::vector<TObject> pool;
        for (int j = 0; j < k; ++j) pool.push_back(t.random_element(x, rng));
        int q = 1 + rng.below_int(3);
        std::vector<TObject> mids;
        for (int j = 0; j < q; ++j) mids.push_back(t.random_element(fin(k), rng));
        TObject w = t.random_element(fin(q), rng);
        std::vector<TObject> flats;
        for (const TObject& m : mids) flats.push_back(t.flatten(m, pool, x));
        TObject via_inner = t.flatten(w, flats, x);
        TObject via_outer = t.flatten(t.flatten(w, mids, fin(k)), pool, x);
        if (via_inner != via_outer)
          return fail("mult-associativity", "sampled: " + show2(via_inner, via_outer));
      }
    }

    // Naturality of mult against a random function.
    for (int trial = 0; trial < 3; ++trial) {
      FinSet y = fin(1 + rng.below_int(3));
      FinFun f = random_fun(x, y, rng);
      for (const Nested& n :
           nestings_of(t, x, p.exhaustive && t.tier() == Tier::Enumerable, samples / 3 + 1, rng,
                       o.budget)) {
        bump(st);
        std::vector<TObject> mapped;
        for (const TObject& u : n.pool) mapped.push_back(t.map(f, u));
        TObject lhs = t.flatten(n.outer, mapped, y);
        TObject rhs = t.map(f, t.flatten(n.outer, n.pool, x));
        if (lhs != rhs) return fail("mult-naturality", show2(lhs, rhs));
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::optional<LawFailure> check_monoidal_laws(const Monad& t, const LawOptions& o, LawStats* st) {
  Rng rng(mix_seed(o.seed, 33));
  int samples = samples_for(t, o);

  // Unitors: pairing with the trivial element changes nothing.
  for (const SizePlan& p : unary_plan(t, o)) {
    FinSet x = fin(p.size);
    for (const TObject& u : elements_of(t, x, p.exhaustive, samples, rng, o.budget)) {
      bump(st);
      TObject r = t.psi(u, psi0(t), x, terminal());
      if (r.payload != u.payload || r.base != u.base)
        return fail("right-unitor", show2(r, u));
      TObject l = t.psi(psi0(t), u, terminal(), x);
      if (l.payload != u.payload || l.base != u.base)
        return fail("left-unitor", show2(l, u));
    }
  }

  // Associativity and symmetry of psi; unit compatibility.
  for (const auto& pp : binary_plan(t, o)) {
    FinSet x = fin(pp[0].size), y = fin(pp[1].size);
    auto us = elements_of(t, x, pp[0].exhaustive, samples, rng, o.budget);
    auto vs = elements_of(t, y, pp[1].exhaustive, samples, rng, o.budget);
    FinFun sw = swap_pair(x, y);
    for (const TObject& u : us)
      for (const TObject& v : vs) {
        bump(st);
        TObject lhs = t.map(sw, t.psi(u, v, x, y));
        TObject rhs = t.psi(v, u, y, x);
        if (lhs != rhs) return fail("symmetry", show2(lhs, rhs));
      }
    for (int a = 0; a < x.size; ++a)
      for (int b = 0; b < y.size; ++b) {
        bump(st);
        TObject lhs = t.psi(t.unit(x, a), t.unit(y, b), x, y);
        TObject rhs = t.unit(fin(x.size * y.size), a * y.size + b);
        if (lhs != rhs) return fail("unit-compatibility", show2(lhs, rhs));
      }
    // Third factor for associativity, kept small.
    FinSet z = fin(2);
    auto ws = elements_of(t, z, t.tier() == Tier::Enumerable && pp[0].exhaustive && pp[1].exhaustive,
                          4, rng, o.budget);
    for (const TObject& u : us)
      for (const TObject& v : vs)
        for (const TObject& w : ws) {
          bump(st);
          TObject lhs = t.psi(t.psi(u, v, x, y), w, fin(x.size * y.size), z);
          TObject rhs = t.psi(u, t.psi(v, w, y, z), x, fin(y.size * z.size));
          if (lhs != rhs) return fail("strength-associativity", show2(lhs, rhs));
        }
  }

  // Multiplication compatibility: flattening before or after pairing agrees.
  if (t.tier() == Tier::Enumerable) {
    for (const auto& pp : binary_plan(t, o)) {
      FinSet x = fin(pp[0].size), y = fin(pp[1].size);
      bool exh = pp[0].exhaustive && pp[1].exhaustive;
      std::vector<TObject> pool_x = enumerate_carrier(t, x, o.budget);
      std::vector<TObject> pool_y = enumerate_carrier(t, y, o.budget);
      FinSet ix = fin(static_cast<int>(pool_x.size()));
      FinSet iy = fin(static_cast<int>(pool_y.size()));
      std::array<FinSet, 2> fs{x, y};
      ProductSet pxy = product(fs);
      // psi on pooled pairs, tabulated on index pairs.
      std::vector<TObject> pool_pairs;
      pool_pairs.reserve(pool_x.size() * pool_y.size());
      for (const TObject& a : pool_x)
        for (const TObject& b : pool_y) pool_pairs.push_back(t.psi(a, b, x, y));
      auto uu = exh ? enumerate_carrier(t, ix, o.budget)
                    : elements_of(t, ix, false, samples / 2 + 1, rng, o.budget);
      auto vv = exh ? enumerate_carrier(t, iy, o.budget)
                    : elements_of(t, iy, false, samples / 2 + 1, rng, o.budget);
      for (const TObject& U : uu)
        for (const TObject& V : vv) {
          bump(st);
          TObject paired = t.psi(U, V, ix, iy);
          TObject lhs = t.flatten(paired, pool_pairs, pxy.set);
          TObject rhs = t.psi(t.flatten(U, pool_x, x), t.flatten(V, pool_y, y), x, y);
          if (lhs != rhs)
            return fail("mult-compatibility", "sizes " + std::to_string(x.size) + "," +
                                                  std::to_string(y.size) + ": " + show2(lhs, rhs));
        }
    }
  } else {
    for (int i = 0; i < samples; ++i) {
      bump(st);
      FinSet x = fin(1 + rng.below_int(3)), y = fin(1 + rng.below_int(3));
      std::array<FinSet, 2> fs{x, y};
      ProductSet pxy = product(fs);
      int kx = 1 + rng.below_int(3), ky = 1 + rng.below_int(3);
      std::vector<TObject> pool_x, pool_y;
      for (int j = 0; j < kx; ++j) pool_x.push_back(t.random_element(x, rng));
      for (int j = 0; j < ky; ++j) pool_y.push_back(t.random_element(y, rng));
      TObject U = t.random_element(fin(kx), rng);
      TObject V = t.random_element(fin(ky), rng);
      std::vector<TObject> pool_pairs;
      for (const TObject& a : pool_x)
        for (const TObject& b : pool_y) pool_pairs.push_back(t.psi(a, b, x, y));
      TObject lhs = t.flatten(t.psi(U, V, fin(kx), fin(ky)), pool_pairs, pxy.set);
      TObject rhs = t.psi(t.flatten(U, pool_x, x), t.flatten(V, pool_y, y), x, y);
      if (lhs != rhs) return fail("mult-compatibility", "sampled: " + show2(lhs, rhs));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::optional<LawFailure> check_naturality(const Monad& t, const LawOptions& o, LawStats* st) {
  Rng rng(mix_seed(o.seed, 44));
  int samples = samples_for(t, o);
  for (const auto& pp : binary_plan(t, o)) {
    FinSet x = fin(pp[0].size), y = fin(pp[1].size);
    auto us = elements_of(t, x, pp[0].exhaustive, samples, rng, o.budget);
    auto vs = elements_of(t, y, pp[1].exhaustive, samples, rng, o.budget);
    for (int trial = 0; trial < 3; ++trial) {
      FinSet x2 = fin(1 + rng.below_int(3)), y2 = fin(1 + rng.below_int(3));
      FinFun f = random_fun(x, x2, rng), g = random_fun(y, y2, rng);
      FinFun fg = pair_fun(f, g);
      for (const TObject& u : us)
        for (const TObject& v : vs) {
          bump(st);
          TObject lhs = t.map(fg, t.psi(u, v, x, y));
          TObject rhs = t.psi(t.map(f, u), t.map(g, v), x2, y2);
          if (lhs != rhs) return fail("psi-naturality", show2(lhs, rhs));
        }
      // chi naturality on sampled elements of T(X x Y).
      std::array<FinSet, 2> fs{x, y};
      ProductSet pxy = product(fs);
      auto ws = elements_of(t, pxy.set, pp[0].exhaustive && pp[1].exhaustive, samples / 2 + 1, rng,
                            o.budget);
      for (const TObject& w : ws) {
        bump(st);
        auto [a, b] = chi(t, x, y, w);
        auto [a2, b2] = chi(t, x2, y2, t.map(fg, w));
        if (t.map(f, a) != a2 || t.map(g, b) != b2)
          return fail("chi-naturality", to_string(w));
      }
    }
  }
  return std::nullopt;
}

std::optional<LawFailure> check_diagonal_identity(const Monad& t, const LawOptions& o,
                                                  LawStats* st) {
  Rng rng(mix_seed(o.seed, 55));
  for (const SizePlan& p : unary_plan(t, o)) {
    FinSet x = fin(p.size);
    FinFun d = diagonal(x, 2);
    for (const TObject& u : elements_of(t, x, p.exhaustive, samples_for(t, o), rng, o.budget)) {
      bump(st);
      auto [a, b] = chi(t, x, x, t.map(d, u));
      if (a != u || b != u)
        return fail("diagonal-through-chi", to_string(u) + " -> (" + to_string(a) + ", " +
                                                to_string(b) + ")");
    }
  }
  return std::nullopt;
}

std::optional<LawFailure> check_all_laws(const Monad& t, const LawOptions& o, LawStats* st) {
  if (auto f = check_functor_laws(t, o, st)) return f;
  if (auto f = check_monad_laws(t, o, st)) return f;
  if (auto f = check_monoidal_laws(t, o, st)) return f;
  if (auto f = check_naturality(t, o, st)) return f;
  if (auto f = check_diagonal_identity(t, o, st)) return f;
  return std::nullopt;
}

}  // namespace monpres
