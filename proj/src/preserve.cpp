#include "monpres/preserve.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <algorithm>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace monpres {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::uint64_t kChunkItems = 64;

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MONADPRESERVE_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

// One enumerated carrier size worth of work items.
struct Bucket {
  std::uint64_t start = 0;  // global item index of ordinal 0
  std::uint64_t take = 0;   // items actually scanned at this size
  std::shared_ptr<AlgebraRange> range;
};

struct ScanPlan {
  const Monad* t = nullptr;
  MonadPtr tp;
  const Equation* eq = nullptr;
  const CheckOptions* o = nullptr;
  std::vector<Bucket> buckets;
  std::uint64_t total_items = 0;
  bool algebra_budget_hit = false;
};

struct ItemOutcome {
  CheckStats stats;
  std::optional<Witness> witness;
};

void check_assignment_shape(const Monad& t, const FinAlgebra& alg,
                            std::span<const TObject> assignment, std::size_t nvars) {
  if (assignment.size() != nvars)
    throw StructuralError("assignment has " + std::to_string(assignment.size()) +
                          " elements for " + std::to_string(nvars) + " variables");
  TObject probe = t.unit(alg.carrier, 0);
  for (const TObject& u : assignment) {
    if (u.base != alg.carrier.size)
      throw StructuralError("assignment element lives over the wrong carrier");
    if (u.payload.index() != probe.payload.index())
      throw StructuralError("assignment element does not belong to " + t.name());
  }
}

ItemOutcome scan_item(const ScanPlan& plan, std::uint64_t item) {
  const Equation& eq = *plan.eq;
  const CheckOptions& o = *plan.o;
  ItemOutcome out;

  const Seed* seed = nullptr;
  FinAlgebra alg;
  if (item < o.seeds.size()) {
    seed = &o.seeds[static_cast<std::size_t>(item)];
    alg = seed->algebra;
  } else {
    const Bucket* b = nullptr;
    for (const Bucket& cand : plan.buckets)
      if (item >= cand.start && item < cand.start + cand.take) b = &cand;
    if (!b) throw StructuralError("work item outside the planned scan");
    alg = b->range->at(item - b->start);
  }

  out.stats.algebras_scanned = 1;
  if (!satisfies(alg, eq).holds) return out;
  out.stats.algebras_satisfying = 1;

  LiftedAlgebra la(plan.tp, alg);
  std::size_t nv = eq.vars.size();

  auto found = [&](std::vector<TObject> env, TObject l, TObject r) {
    out.witness = Witness{alg, std::move(env), std::move(l), std::move(r)};
  };

  if (seed) {
    for (const auto& a : seed->assignments) {
      TObject l = la.interpret(eq.lhs, eq.vars, a);
      TObject r = la.interpret(eq.rhs, eq.vars, a);
      ++out.stats.assignments_scanned;
      if (!(l == r)) {
        found(a, std::move(l), std::move(r));
        return out;
      }
    }
  }

  if (o.randomized) {
    Rng rng(mix_seed(o.seed, item));
    std::vector<TObject> env(nv);
    for (std::uint64_t trial = 0; trial < o.bounds.randomized_trials; ++trial) {
      for (std::size_t j = 0; j < nv; ++j) env[j] = plan.t->random_element(alg.carrier, rng);
      TObject l = la.interpret(eq.lhs, eq.vars, env);
      TObject r = la.interpret(eq.rhs, eq.vars, env);
      ++out.stats.assignments_scanned;
      if (!(l == r)) {
        found(env, std::move(l), std::move(r));
        return out;
      }
    }
    return out;
  }

  std::uint64_t m =
      enumerable_size(*plan.t, alg.carrier, std::numeric_limits<std::uint64_t>::max());
  BigInt total = 1;
  for (std::size_t j = 0; j < nv; ++j) total *= m;
  std::uint64_t n_scan;
  if (total > o.bounds.per_algebra_assignments) {
    out.stats.assignment_budget_hit = true;
    n_scan = o.bounds.per_algebra_assignments;
  } else {
    n_scan = total.convert_to<std::uint64_t>();
  }

  // Index-table evaluation when the lifted tables fit; TObject evaluation
  // otherwise. Both walk assignments in the same lexicographic order.
  std::optional<FinAlgebra> tab;
  try {
    tab = la.tabulate();
  } catch (const BudgetError&) {
  }

  if (tab) {
    std::vector<int> idx(nv, 0);
    for (std::uint64_t it = 0; it < n_scan; ++it) {
      int l = interpret(*tab, eq.lhs, eq.vars, idx);
      int r = interpret(*tab, eq.rhs, eq.vars, idx);
      ++out.stats.assignments_scanned;
      if (l != r) {
        std::vector<TObject> env(nv);
        for (std::size_t j = 0; j < nv; ++j)
          env[j] = plan.t->carrier_at(alg.carrier, static_cast<std::uint64_t>(idx[j]));
        found(std::move(env), plan.t->carrier_at(alg.carrier, static_cast<std::uint64_t>(l)),
              plan.t->carrier_at(alg.carrier, static_cast<std::uint64_t>(r)));
        return out;
      }
      int p = static_cast<int>(nv) - 1;
      while (p >= 0 && idx[static_cast<std::size_t>(p)] + 1 == static_cast<int>(m)) {
        idx[static_cast<std::size_t>(p)] = 0;
        --p;
      }
      if (p < 0) break;
      ++idx[static_cast<std::size_t>(p)];
    }
    return out;
  }

  std::vector<std::uint64_t> idx(nv, 0);
  std::vector<TObject> env(nv);
  for (std::size_t j = 0; j < nv; ++j) env[j] = plan.t->carrier_at(alg.carrier, 0);
  for (std::uint64_t it = 0; it < n_scan; ++it) {
    TObject l = la.interpret(eq.lhs, eq.vars, env);
    TObject r = la.interpret(eq.rhs, eq.vars, env);
    ++out.stats.assignments_scanned;
    if (!(l == r)) {
      found(env, std::move(l), std::move(r));
      return out;
    }
    int p = static_cast<int>(nv) - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] + 1 == m) {
      idx[static_cast<std::size_t>(p)] = 0;
      env[static_cast<std::size_t>(p)] = plan.t->carrier_at(alg.carrier, 0);
      --p;
    }
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    env[static_cast<std::size_t>(p)] =
        plan.t->carrier_at(alg.carrier, idx[static_cast<std::size_t>(p)]);
  }
  return out;
}

void add_stats(CheckStats& into, const CheckStats& from) {
  into.algebras_scanned += from.algebras_scanned;
  into.algebras_satisfying += from.algebras_satisfying;
  into.assignments_scanned += from.assignments_scanned;
  into.algebra_budget_hit = into.algebra_budget_hit || from.algebra_budget_hit;
  into.assignment_budget_hit = into.assignment_budget_hit || from.assignment_budget_hit;
}

struct ChunkOutcome {
  CheckStats stats;
  std::optional<Witness> witness;
};

// Chunks are claimed in order from a shared counter; each stops at its first
// violation and the least violating chunk wins. A chunk is skipped only when a
// strictly earlier chunk already holds a violation, so every chunk before the
// winner completes and the merged report cannot depend on scheduling.
void run_chunks(const ScanPlan& plan, int jobs, std::vector<ChunkOutcome>& outcomes,
                std::uint64_t& winner) {
  std::uint64_t n_chunks = (plan.total_items + kChunkItems - 1) / kChunkItems;
  outcomes.assign(static_cast<std::size_t>(n_chunks), {});
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::mutex err_mu;
  std::exception_ptr err;

  auto worker = [&] {
    for (;;) {
      std::uint64_t chunk = next.fetch_add(1);
      if (chunk >= n_chunks) return;
      if (chunk > best.load()) continue;
      ChunkOutcome& out = outcomes[static_cast<std::size_t>(chunk)];
      try {
        std::uint64_t lo = chunk * kChunkItems;
        std::uint64_t hi = std::min(lo + kChunkItems, plan.total_items);
        for (std::uint64_t item = lo; item < hi; ++item) {
          ItemOutcome io = scan_item(plan, item);
          add_stats(out.stats, io.stats);
          if (io.witness) {
            out.witness = std::move(io.witness);
            break;
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mu);
        if (!err) err = std::current_exception();
        best.store(0);
        return;
      }
      if (out.witness) {
        std::uint64_t cur = best.load();
        while (chunk < cur && !best.compare_exchange_weak(cur, chunk)) {
        }
      }
    }
  };

  if (jobs <= 1 || n_chunks <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    int n = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), n_chunks));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
  winner = best.load();
}

ordered_json tobject_value(const TObject& u) { return ordered_json::parse(tobject_json(u)); }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::PreservedUpToBound:
      return "PreservedUpToBound";
    case Verdict::Violated:
      return "Violated";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::string CheckReport::to_json() const {
  ordered_json j;
  j["verdict"] = monpres::to_string(verdict);
  j["monad"] = monad;
  j["equation"] = equation;
  j["name"] = name;
  j["bounds"] = ordered_json{{"max_carrier", bounds.max_carrier},
                             {"max_algebras", bounds.max_algebras},
                             {"per_algebra_assignments", bounds.per_algebra_assignments},
                             {"randomized_trials", bounds.randomized_trials}};
  j["randomized"] = randomized;
  j["seed"] = seed;
  if (witness) {
    ordered_json w;
    w["algebra"] = ordered_json::parse(algebra_to_json_text(witness->algebra));
    ordered_json a = ordered_json::object();
    for (std::size_t i = 0; i < vars.size(); ++i)
      a[vars[i]] = tobject_value(witness->assignment[i]);
    w["assignment"] = a;
    w["lhs"] = tobject_value(witness->lhs);
    w["rhs"] = tobject_value(witness->rhs);
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["stats"] = ordered_json{{"algebras_scanned", stats.algebras_scanned},
                            {"algebras_satisfying", stats.algebras_satisfying},
                            {"assignments_scanned", stats.assignments_scanned},
                            {"algebra_budget_hit", stats.algebra_budget_hit},
                            {"assignment_budget_hit", stats.assignment_budget_hit}};
  return j.dump(2);
}

CheckReport check_preservation(const MonadPtr& t, const Equation& eq, const CheckOptions& o) {
  if (!t) throw StructuralError("null monad");
  if (t->tier() == Tier::Sampleable && !o.randomized)
    throw CapabilityError("exhaustive assignment scans need an enumerable carrier: " + t->name() +
                          " (rerun randomized)");
  if (o.bounds.max_carrier < 1) throw StructuralError("max carrier must be positive");

  for (const Seed& s : o.seeds) {
    validate(s.algebra);
    if (!(s.algebra.sig == eq.sig))
      throw StructuralError("seed algebra signature differs from the equation's");
    for (const auto& a : s.assignments)
      check_assignment_shape(*t, s.algebra, a, eq.vars.size());
  }

  ScanPlan plan;
  plan.t = t.get();
  plan.tp = t;
  plan.eq = &eq;
  plan.o = &o;
  plan.total_items = o.seeds.size();
  std::uint64_t remaining = o.bounds.max_algebras;
  for (int s = 1; s <= o.bounds.max_carrier; ++s) {
    auto range = std::make_shared<AlgebraRange>(eq.sig, s,
                                               std::numeric_limits<std::uint64_t>::max());
    BigInt cnt = range->count();
    std::uint64_t take = cnt > remaining ? remaining : cnt.convert_to<std::uint64_t>();
    if (take < cnt) plan.algebra_budget_hit = true;
    if (take > 0) {
      plan.buckets.push_back(Bucket{plan.total_items, take, std::move(range)});
      plan.total_items += take;
      remaining -= take;
    }
  }

  std::vector<ChunkOutcome> outcomes;
  std::uint64_t winner = 0;
  run_chunks(plan, resolve_jobs(o.jobs), outcomes, winner);

  CheckReport report;
  report.monad = t->name();
  report.equation = pretty(eq);
  report.name = eq.name;
  report.vars = eq.vars;
  report.bounds = o.bounds;
  report.randomized = o.randomized;
  report.seed = o.seed;
  report.stats.algebra_budget_hit = plan.algebra_budget_hit;

  if (winner != std::numeric_limits<std::uint64_t>::max()) {
    for (std::uint64_t c = 0; c < winner; ++c) add_stats(report.stats, outcomes[c].stats);
    add_stats(report.stats, outcomes[static_cast<std::size_t>(winner)].stats);
    report.witness = outcomes[static_cast<std::size_t>(winner)].witness;
    report.verdict = Verdict::Violated;
    WitnessEval replay = verify_witness(t, eq, report.witness->algebra, report.witness->assignment);
    if (!replay.violates || !(replay.lhs == report.witness->lhs) ||
        !(replay.rhs == report.witness->rhs))
      throw StructuralError("violation witness failed to replay");
  } else {
    for (const ChunkOutcome& c : outcomes) add_stats(report.stats, c.stats);
    bool certain = !o.randomized && !report.stats.algebra_budget_hit &&
                   !report.stats.assignment_budget_hit;
    report.verdict = certain ? Verdict::PreservedUpToBound : Verdict::Unknown;
  }
  return report;
}

WitnessEval verify_witness(const MonadPtr& t, const Equation& eq, const FinAlgebra& alg,
                           std::span<const TObject> assignment) {
  if (!t) throw StructuralError("null monad");
  validate(alg);
  if (!(alg.sig == eq.sig))
    throw StructuralError("witness algebra signature differs from the equation's");
  if (!satisfies(alg, eq).holds)
    throw StructuralError("witness algebra does not satisfy the base equation");
  check_assignment_shape(*t, alg, assignment, eq.vars.size());
  LiftedAlgebra la(t, alg);
  WitnessEval ev;
  ev.lhs = la.interpret(eq.lhs, eq.vars, assignment);
  ev.rhs = la.interpret(eq.rhs, eq.vars, assignment);
  ev.violates = !(ev.lhs == ev.rhs);
  return ev;
}

ResidualResult residual_commutes(const MonadPtr& t, const Term& term,
                                 std::span<const std::string> vars, int carrier_size,
                                 std::uint64_t budget) {
  if (!t) throw StructuralError("null monad");
  FinSet x = fin(carrier_size);
  std::vector<TObject> pool = enumerate_carrier(*t, x, budget);
  std::vector<int> pos = prepare_positions(term, vars);
  std::size_t k = pos.size();
  std::size_t nv = vars.size();

  BigInt total = 1;
  for (std::size_t j = 0; j < nv; ++j) total *= pool.size();
  if (total > budget) {
    std::ostringstream os;
    os << "residual scan over " << total << " tuples exceeds budget " << budget;
    throw BudgetError(os.str());
  }

  std::vector<FinSet> xs_k(k, x), xs_v(nv, x);
  FinFun prep = prepare_fun(term, vars, carrier_size);

  std::vector<std::size_t> idx(nv, 0);
  std::vector<TObject> env(nv, pool.empty() ? TObject{} : pool[0]);
  std::vector<TObject> sel(k);
  std::uint64_t n_scan = total.convert_to<std::uint64_t>();
  for (std::uint64_t it = 0; it < n_scan; ++it) {
    for (std::size_t j = 0; j < k; ++j) sel[j] = env[static_cast<std::size_t>(pos[j])];
    TObject upper = psi_n(*t, xs_k, sel);
    TObject lower = t->map(prep, psi_n(*t, xs_v, env));
    if (!(upper == lower)) return ResidualResult{false, env, upper, lower};
    int p = static_cast<int>(nv) - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] + 1 == pool.size()) {
      idx[static_cast<std::size_t>(p)] = 0;
      env[static_cast<std::size_t>(p)] = pool[0];
      --p;
    }
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    env[static_cast<std::size_t>(p)] = pool[idx[static_cast<std::size_t>(p)]];
  }
  return ResidualResult{};
}

bool alphacom_check(const MonadPtr& t, const Equation& eq) {
  if (!t) throw StructuralError("null monad");
  if (!classify(eq).one_drop)
    throw StructuralError("alpha diagram needs a one-drop equation: " + pretty(eq));
  auto lc = var_counts(eq.lhs);
  auto rc = var_counts(eq.rhs);
  auto occurrences = [](const std::map<std::string, int>& m, const std::string& v) {
    auto it = m.find(v);
    return it == m.end() ? 0 : it->second;
  };
  std::string dropped;
  bool in_rhs = false;
  for (const std::string& v : eq.vars) {
    int l = occurrences(lc, v), r = occurrences(rc, v);
    if (l == 1 && r == 0) {
      dropped = v;
      in_rhs = false;
      break;
    }
    if (l == 0 && r == 1) {
      dropped = v;
      in_rhs = true;
      break;
    }
  }

  const Term& carrier_side = in_rhs ? eq.rhs : eq.lhs;
  std::vector<std::string> reordered{dropped};
  for (const std::string& v : eq.vars)
    if (v != dropped) reordered.push_back(v);

  FinSet one = terminal();
  std::vector<int> pos = prepare_positions(carrier_side, reordered);
  std::size_t k = pos.size();
  std::vector<FinSet> ones_k(k, one), ones_v(reordered.size(), one);
  FinFun prep = prepare_fun(carrier_side, reordered, 1);
  TObject eta1 = t->unit(one, 0);

  // T1 for the sampleable instance is the single point mass.
  std::vector<TObject> t1pool;
  if (t->tier() == Tier::Enumerable)
    t1pool = enumerate_carrier(*t, one);
  else
    t1pool = {eta1};

  std::vector<TObject> alpha(reordered.size(), eta1);
  std::vector<TObject> sel(k);
  for (const TObject& w : t1pool) {
    alpha[0] = w;
    for (std::size_t j = 0; j < k; ++j) sel[j] = alpha[static_cast<std::size_t>(pos[j])];
    TObject upper = psi_n(*t, ones_k, sel);
    TObject lower = t->map(prep, psi_n(*t, ones_v, alpha));
    if (!(upper == lower)) return false;
  }
  return true;
}

}  // namespace monpres
