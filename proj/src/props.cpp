#include "monpres/props.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <variant>

namespace monpres {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json tobject_value(const TObject& u) { return ordered_json::parse(tobject_json(u)); }

// Closed-form justification that the diagonal diagram commutes for this
// instance, empty when none applies.
std::string relevance_certificate(const Monad& t) {
  TObject probe = t.unit(terminal(), 0);
  if (std::holds_alternative<MaybeElem>(probe.payload)) return "maybe-diagonal-pairing";
  if (std::holds_alternative<ReaderElem>(probe.payload)) return "reader-pointwise-diagonal";
  if (const MonoidTable* m = writer_monoid(t)) {
    for (int w = 0; w < m->size; ++w)
      if (m->times(w, w) != w) return "";
    return "writer-idempotent-monoid";
  }
  if (const SemiringTable* s = multiset_semiring(t)) {
    if (s->size == 1) return "multiset-trivial-semiring";
  }
  return "";
}

std::string n_relevance_certificate(const Monad& t, int n) {
  std::string rel = relevance_certificate(t);
  if (!rel.empty()) return "relevant: " + rel;
  if (const MonoidTable* m = writer_monoid(t)) {
    for (int w = 0; w < m->size; ++w) {
      int p = w;
      for (int i = 1; i < n; ++i) p = m->times(p, w);
      if (p != w) return "";
    }
    return "writer-monoid-nth-power-identity";
  }
  return "";
}

// Uniform two-point distributions over {0..size-1}, the canonical probes for
// diagonal failures on the sampleable tier.
std::vector<TObject> uniform_pair_battery(int size) {
  std::vector<TObject> out;
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      DistElem d{std::vector<Rational>(static_cast<std::size_t>(size), Rational(0))};
      d.weight[static_cast<std::size_t>(i)] = Rational(1, 2);
      d.weight[static_cast<std::size_t>(j)] = Rational(1, 2);
      out.push_back(TObject{size, d});
    }
  }
  return out;
}

constexpr int kSampledProbes = 200;

}  // namespace

std::string to_string(PropStatus s) {
  switch (s) {
    case PropStatus::Yes:
      return "Yes";
    case PropStatus::No:
      return "No";
    case PropStatus::UnknownUpTo:
      return "UnknownUpTo";
  }
  return "UnknownUpTo";
}

std::string to_string(Discernment d) {
  switch (d) {
    case Discernment::Discerning:
      return "Discerning";
    case Discernment::NotDiscerning:
      return "NotDiscerning";
    case Discernment::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::string PropVerdict::to_json() const {
  ordered_json j;
  j["status"] = monpres::to_string(status);
  j["bound"] = bound;
  j["certificate"] = certificate;
  j["detail"] = detail;
  if (witness) {
    ordered_json w;
    w["set_size"] = witness->set_size;
    w["diagram"] = witness->diagram;
    ordered_json els = ordered_json::array();
    for (const TObject& u : witness->elements) els.push_back(tobject_value(u));
    w["elements"] = els;
    w["lhs"] = tobject_value(witness->lhs);
    w["rhs"] = tobject_value(witness->rhs);
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j.dump(2);
}

PropVerdict is_affine(const Monad& t) {
  PropVerdict v;
  BigInt n = t.t1_count();
  std::ostringstream os;
  os << "|T1| = " << n;
  v.detail = os.str();
  if (n == 1) {
    v.status = PropStatus::Yes;
    v.certificate = "one-point-t1";
    return v;
  }
  v.status = PropStatus::No;
  if (t.tier() == Tier::Enumerable) {
    PropWitness w;
    w.set_size = 1;
    w.diagram = "two distinct elements over the one-point set";
    w.elements = {t.carrier_at(terminal(), 0), t.carrier_at(terminal(), 1)};
    w.lhs = w.elements[0];
    w.rhs = w.elements[1];
    v.witness = std::move(w);
  }
  return v;
}

PropVerdict relevance_check(const MonadPtr& t, int max_size, std::uint64_t seed) {
  if (!t) throw StructuralError("null monad");
  PropVerdict v;
  v.bound = max_size;

  auto probe = [&](int size, const TObject& u) -> bool {
    FinSet x = fin(size);
    TObject via_psi = t->psi(u, u, x, x);
    TObject via_map = t->map(diagonal(x, 2), u);
    if (via_psi == via_map) return true;
    PropWitness w;
    w.set_size = size;
    w.diagram = "strength after duplication vs mapped diagonal";
    w.elements = {u};
    w.lhs = via_psi;
    w.rhs = via_map;
    v.status = PropStatus::No;
    v.witness = std::move(w);
    return false;
  };

  for (int s = 1; s <= max_size; ++s) {
    FinSet x = fin(s);
    if (t->tier() == Tier::Enumerable) {
      for (const TObject& u : enumerate_carrier(*t, x))
        if (!probe(s, u)) return v;
    } else {
      for (const TObject& u : uniform_pair_battery(s))
        if (!probe(s, u)) return v;
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
      for (int k = 0; k < kSampledProbes; ++k)
        if (!probe(s, t->random_element(x, rng))) return v;
    }
  }

  std::string cert = relevance_certificate(*t);
  if (!cert.empty()) {
    v.status = PropStatus::Yes;
    v.certificate = cert;
  } else {
    v.status = PropStatus::UnknownUpTo;
    v.detail = "no refutation found; no instance certificate applies";
  }
  return v;
}

PropVerdict n_relevance_check(const MonadPtr& t, int n, int max_size, std::uint64_t seed) {
  if (!t) throw StructuralError("null monad");
  if (n < 2) throw StructuralError("n-relevance needs n >= 2");
  PropVerdict v;
  v.bound = max_size;

  auto probe_diag = [&](int size, const TObject& u) -> bool {
    FinSet x = fin(size);
    std::vector<FinSet> xs(static_cast<std::size_t>(n), x);
    std::vector<TObject> copies(static_cast<std::size_t>(n), u);
    TObject via_psi = psi_n(*t, xs, copies);
    TObject via_map = t->map(diagonal(x, n), u);
    if (via_psi == via_map) return true;
    PropWitness w;
    w.set_size = size;
    w.diagram = "n-fold strength after duplication vs mapped n-fold diagonal";
    w.elements = {u};
    w.lhs = via_psi;
    w.rhs = via_map;
    v.status = PropStatus::No;
    v.witness = std::move(w);
    return false;
  };

  // The equivalent formulation: splitting into the n projections and merging
  // back must be the identity on T of the product.
  auto probe_split = [&](int size, const TObject& w) -> bool {
    FinSet x = fin(size);
    std::vector<FinSet> xs(static_cast<std::size_t>(n), x);
    std::vector<TObject> parts = chi_n(*t, xs, w);
    TObject back = psi_n(*t, xs, parts);
    if (back == w) return true;
    PropWitness pw;
    pw.set_size = size;
    pw.diagram = "n-fold strength after n projections vs identity";
    pw.elements = {w};
    pw.lhs = back;
    pw.rhs = w;
    v.status = PropStatus::No;
    v.witness = std::move(pw);
    return false;
  };

  constexpr std::uint64_t kSplitBudget = 1u << 16;

  for (int s = 1; s <= max_size; ++s) {
    FinSet x = fin(s);
    ProductSet p = power(x, n);
    if (t->tier() == Tier::Enumerable) {
      for (const TObject& u : enumerate_carrier(*t, x))
        if (!probe_diag(s, u)) return v;
      bool split_fits = true;
      try {
        enumerable_size(*t, p.set, kSplitBudget);
      } catch (const BudgetError&) {
        split_fits = false;
      }
      if (split_fits) {
        for (const TObject& w : enumerate_carrier(*t, p.set))
          if (!probe_split(s, w)) return v;
      }
    } else {
      for (const TObject& u : uniform_pair_battery(s))
        if (!probe_diag(s, u)) return v;
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
      for (int k = 0; k < kSampledProbes; ++k)
        if (!probe_diag(s, t->random_element(x, rng))) return v;
      for (int k = 0; k < kSampledProbes; ++k)
        if (!probe_split(s, t->random_element(p.set, rng))) return v;
    }
  }

  std::string cert = n_relevance_certificate(*t, n);
  if (!cert.empty()) {
    v.status = PropStatus::Yes;
    v.certificate = cert;
  } else {
    v.status = PropStatus::UnknownUpTo;
    v.detail = "no refutation found; no instance certificate applies";
  }
  return v;
}

bool relevant_and_affine_implies_relevant_test(const MonadPtr& t, int n, int max_size) {
  PropVerdict affine = is_affine(*t);
  PropVerdict nrel = n_relevance_check(t, n, max_size);
  PropVerdict rel = relevance_check(t, max_size);
  bool antecedent = affine.status == PropStatus::Yes && nrel.status != PropStatus::No;
  return !(antecedent && rel.status == PropStatus::No);
}

PropVerdict algebraic_relevance_check(const MonadPtr& t, int max_arity, std::uint64_t budget) {
  if (!t) throw StructuralError("null monad");
  PropVerdict v;
  for (int n = 1; n <= max_arity; ++n) {
    FinSet gens = fin(n);
    std::vector<TObject> omegas;
    try {
      omegas = enumerate_carrier(*t, gens, budget);
    } catch (const BudgetError&) {
      v.status = PropStatus::UnknownUpTo;
      v.bound = n - 1;
      v.detail = "operation enumeration over budget at arity " + std::to_string(n);
      return v;
    }
    // Generic operations act on an n x n matrix of fresh variables; entry
    // (i, j) is variable i*n+j.
    FinSet x = fin(n * n);
    std::vector<TObject> rows(static_cast<std::size_t>(n));
    std::vector<TObject> diag(static_cast<std::size_t>(n));
    std::vector<TObject> row_units(static_cast<std::size_t>(n));
    for (const TObject& omega : omegas) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
          row_units[static_cast<std::size_t>(j)] = t->unit(x, i * n + j);
        rows[static_cast<std::size_t>(i)] = t->flatten(omega, row_units, x);
        diag[static_cast<std::size_t>(i)] = t->unit(x, i * n + i);
      }
      TObject lhs = t->flatten(omega, rows, x);
      TObject rhs = t->flatten(omega, diag, x);
      if (!(lhs == rhs)) {
        PropWitness w;
        w.set_size = n;
        w.diagram = "row-wise matrix application vs diagonal application";
        w.elements = {omega};
        w.lhs = lhs;
        w.rhs = rhs;
        v.status = PropStatus::No;
        v.bound = n;
        v.detail = "failing generic operation of arity " + std::to_string(n);
        v.witness = std::move(w);
        return v;
      }
    }
  }
  v.bound = max_arity;
  std::string cert = relevance_certificate(*t);
  if (!cert.empty()) {
    v.status = PropStatus::Yes;
    v.certificate = cert;
  } else {
    v.status = PropStatus::UnknownUpTo;
    v.detail = "all generic operations up to arity " + std::to_string(max_arity) +
               " collapse to the diagonal";
  }
  return v;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> all_tuples(int base, std::size_t len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(len, 0);
  for (;;) {
    out.push_back(cur);
    int p = static_cast<int>(len) - 1;
    while (p >= 0 && cur[static_cast<std::size_t>(p)] + 1 == base) {
      cur[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) break;
    ++cur[static_cast<std::size_t>(p)];
  }
  return out;
}

// Evaluation over a partially filled table; -1 when the value is not yet
// determined.
int eval_partial(const std::vector<std::vector<int>>& tables, int carrier, const Term& t,
                 std::span<const std::string> vars, std::span<const int> env) {
  if (t.is_var()) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == t.head) return env[i];
    throw StructuralError("unbound variable " + t.head);
  }
  std::int64_t idx = 0;
  for (const Term& a : t.args) {
    int val = eval_partial(tables, carrier, a, vars, env);
    if (val < 0) return -1;
    idx = idx * carrier + val;
  }
  return tables[static_cast<std::size_t>(t.op)][static_cast<std::size_t>(idx)];
}

struct CounterModel {
  FinAlgebra algebra;
  std::vector<int> valuation;
};

// Depth-first completion of the operation tables, pruning any branch that
// already breaks the base equation; at each full table, look for a valuation
// separating the companion sides.
std::optional<CounterModel> find_countermodel(const Equation& eq, const Equation& comp, int n,
                                              std::uint64_t node_budget, bool& exhausted) {
  const Signature& sig = eq.sig;
  std::vector<std::vector<int>> tables;
  std::vector<std::pair<int, std::int64_t>> cells;
  for (int i = 0; i < sig.size(); ++i) {
    std::int64_t sz = 1;
    for (int j = 0; j < sig.at(i).arity; ++j) sz *= n;
    tables.emplace_back(static_cast<std::size_t>(sz), -1);
    for (std::int64_t c = 0; c < sz; ++c) cells.emplace_back(i, c);
  }
  auto eq_envs = all_tuples(n, eq.vars.size());
  auto comp_envs = all_tuples(n, comp.vars.size());
  std::uint64_t nodes = 0;

  std::function<std::optional<CounterModel>(std::size_t)> descend =
      [&](std::size_t ci) -> std::optional<CounterModel> {
    if (ci == cells.size()) {
      for (const auto& env : comp_envs) {
        int l = eval_partial(tables, n, comp.lhs, comp.vars, env);
        int r = eval_partial(tables, n, comp.rhs, comp.vars, env);
        if (l != r) {
          FinAlgebra a;
          a.sig = sig;
          a.carrier = fin(n);
          for (int i = 0; i < sig.size(); ++i)
            a.ops.push_back(FinFun{static_cast<int>(tables[static_cast<std::size_t>(i)].size()),
                                   n, tables[static_cast<std::size_t>(i)]});
          return CounterModel{std::move(a), env};
        }
      }
      return std::nullopt;
    }
    auto [op, idx] = cells[ci];
    for (int val = 0; val < n; ++val) {
      if (++nodes > node_budget) {
        exhausted = true;
        return std::nullopt;
      }
      tables[static_cast<std::size_t>(op)][static_cast<std::size_t>(idx)] = val;
      bool consistent = true;
      for (const auto& env : eq_envs) {
        int l = eval_partial(tables, n, eq.lhs, eq.vars, env);
        int r = eval_partial(tables, n, eq.rhs, eq.vars, env);
        if (l >= 0 && r >= 0 && l != r) {
          consistent = false;
          break;
        }
      }
      if (consistent) {
        std::optional<CounterModel> found = descend(ci + 1);
        if (found || exhausted) {
          tables[static_cast<std::size_t>(op)][static_cast<std::size_t>(idx)] = -1;
          return found;
        }
      }
    }
    tables[static_cast<std::size_t>(op)][static_cast<std::size_t>(idx)] = -1;
    return std::nullopt;
  };
  return descend(0);
}

// Bidirectional breadth-first rewriting with both orientations of eq, capped
// by term depth and by the number of distinct terms visited. Two short balls
// meeting in the middle stay far smaller than one ball of full radius.
std::optional<std::vector<std::string>> derive_chain(const Equation& eq, const Term& from,
                                                     const Term& to, int depth_cap,
                                                     std::uint64_t visited_budget) {
  std::vector<Term> candidates;
  for (const std::string& v : term_vars(from)) candidates.push_back(var(v));
  for (const std::string& v : term_vars(to))
    if (std::find_if(candidates.begin(), candidates.end(), [&](const Term& c) {
          return c.head == v;
        }) == candidates.end())
      candidates.push_back(var(v));

  if (from == to) return std::vector<std::string>{pretty(from)};

  std::map<std::string, std::string> pf, pb;  // pretty form -> predecessor
  std::deque<Term> qf, qb;
  pf[pretty(from)] = "";
  qf.push_back(from);
  pb[pretty(to)] = "";
  qb.push_back(to);

  auto build = [&](const std::string& meet) {
    std::vector<std::string> chain;
    for (std::string cur = meet; !cur.empty(); cur = pf.at(cur)) chain.push_back(cur);
    std::reverse(chain.begin(), chain.end());
    for (std::string cur = pb.at(meet); !cur.empty(); cur = pb.at(cur)) chain.push_back(cur);
    return chain;
  };

  while ((!qf.empty() || !qb.empty()) && pf.size() + pb.size() < visited_budget) {
    bool forward = !qf.empty() && (qb.empty() || qf.size() <= qb.size());
    std::deque<Term>& q = forward ? qf : qb;
    std::map<std::string, std::string>& mine = forward ? pf : pb;
    std::map<std::string, std::string>& other = forward ? pb : pf;
    Term cur = q.front();
    q.pop_front();
    std::string cur_key = pretty(cur);
    std::vector<Term> nexts = rewrites(cur, eq.lhs, eq.rhs, candidates);
    std::vector<Term> back = rewrites(cur, eq.rhs, eq.lhs, candidates);
    nexts.insert(nexts.end(), back.begin(), back.end());
    for (Term& nx : nexts) {
      if (depth(nx) > depth_cap) continue;
      std::string key = pretty(nx);
      if (mine.count(key)) continue;
      mine[key] = cur_key;
      if (other.count(key)) return build(key);
      q.push_back(std::move(nx));
    }
  }
  return std::nullopt;
}

}  // namespace

std::string DiscerningReport::to_json() const {
  ordered_json j;
  j["verdict"] = monpres::to_string(verdict);
  j["companion"] = ordered_json{
      {"equation", pretty(companion.companion)},
      {"duplicated", companion.dup_var},
      {"fresh", companion.fresh_var},
      {"side", companion.side == DiscerningCompanion::Side::Lhs ? "lhs" : "rhs"}};
  if (countermodel) {
    j["countermodel"] = ordered_json::parse(algebra_to_json_text(*countermodel));
    ordered_json a = ordered_json::object();
    const auto& vars = companion.companion.vars;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = countermodel_assignment[i];
    j["separating_valuation"] = a;
  } else {
    j["countermodel"] = nullptr;
  }
  j["derivation"] = derivation;
  j["options"] = ordered_json{{"model_bound", options.model_bound},
                              {"derivation_depth", options.derivation_depth},
                              {"visited_budget", options.visited_budget},
                              {"node_budget", options.node_budget}};
  return j.dump(2);
}

DiscerningReport two_discerning_check(const Equation& eq, const DiscerningOptions& o) {
  CompanionResult cr = discerning_companion(eq);
  if (!cr.companion)
    throw StructuralError("not a 2-discerning candidate: " + cr.reason);
  DiscerningReport rep;
  rep.companion = *cr.companion;
  rep.options = o;
  bool exhausted = false;

  // Small models first, then the rewrite search, then the expensive models:
  // each stage is cheap enough not to starve the next.
  auto try_models = [&](int lo, int hi) -> bool {
    for (int n = lo; n <= hi; ++n) {
      std::optional<CounterModel> found =
          find_countermodel(eq, rep.companion.companion, n, o.node_budget, exhausted);
      if (found) {
        rep.verdict = Discernment::Discerning;
        rep.countermodel = std::move(found->algebra);
        rep.countermodel_assignment = std::move(found->valuation);
        return true;
      }
    }
    return false;
  };

  if (try_models(2, std::min(3, o.model_bound))) return rep;
  std::optional<std::vector<std::string>> chain =
      derive_chain(eq, rep.companion.companion.lhs, rep.companion.companion.rhs,
                   o.derivation_depth, o.visited_budget);
  if (chain) {
    rep.verdict = Discernment::NotDiscerning;
    rep.derivation = std::move(*chain);
    return rep;
  }
  if (try_models(4, o.model_bound)) return rep;
  rep.verdict = Discernment::Unknown;
  return rep;
}

}  // namespace monpres
