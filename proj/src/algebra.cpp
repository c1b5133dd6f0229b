#include "monpres/algebra.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace monpres {

int FinAlgebra::apply(int op, std::span<const int> args) const {
  const FinFun& f = ops[static_cast<std::size_t>(op)];
  std::int64_t idx = 0;
  for (int a : args) idx = idx * carrier.size + a;
  return f(static_cast<int>(idx));
}

void validate(const FinAlgebra& a) {
  if (a.carrier.size <= 0) throw StructuralError("carrier must be non-empty");
  if (static_cast<int>(a.ops.size()) != a.sig.size())
    throw StructuralError("one table per symbol required");
  for (int i = 0; i < a.sig.size(); ++i) {
    const FinFun& f = a.ops[static_cast<std::size_t>(i)];
    std::int64_t dom = 1;
    for (int j = 0; j < a.sig.at(i).arity; ++j) dom *= a.carrier.size;
    if (f.dom != dom || f.cod != a.carrier.size)
      throw StructuralError("table shape mismatch for " + a.sig.at(i).name);
    validate(f);
  }
}

FinAlgebra algebra_from_json_text(const std::string& text, const Signature& sig) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON", 1, 1);
  if (!j.contains("carrier") || !j["carrier"].is_number_integer())
    throw StructuralError("missing carrier size");
  FinAlgebra a;
  a.sig = sig;
  a.carrier = fin(j["carrier"].get<int>());
  if (!j.contains("ops") || !j["ops"].is_object()) throw StructuralError("missing ops object");
  a.ops.resize(static_cast<std::size_t>(sig.size()));
  for (int i = 0; i < sig.size(); ++i) {
    const std::string& name = sig.at(i).name;
    if (!j["ops"].contains(name)) throw StructuralError("missing table for symbol: " + name);
    std::vector<int> table;
    for (const auto& v : j["ops"][name]) {
      if (!v.is_number_integer()) throw StructuralError("non-integer table entry for " + name);
      table.push_back(v.get<int>());
    }
    std::int64_t dom = 1;
    for (int k = 0; k < sig.at(i).arity; ++k) dom *= a.carrier.size;
    a.ops[static_cast<std::size_t>(i)] =
        FinFun{static_cast<int>(dom), a.carrier.size, std::move(table)};
  }
  validate(a);
  return a;
}

std::string algebra_to_json_text(const FinAlgebra& a) {
  nlohmann::ordered_json j;
  j["carrier"] = a.carrier.size;
  nlohmann::ordered_json ops = nlohmann::ordered_json::object();
  for (int i = 0; i < a.sig.size(); ++i)
    ops[a.sig.at(i).name] = a.ops[static_cast<std::size_t>(i)].table;
  j["ops"] = ops;
  return j.dump();
}

FinAlgebra load_algebra(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return algebra_from_json_text(os.str(), sig);
}

// ---------------------------------------------------------------------------

namespace {

int var_slot(std::span<const std::string> vars, const std::string& name) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  throw StructuralError("variable not bound: " + name);
}

}  // namespace

int interpret(const FinAlgebra& a, const Term& t, std::span<const std::string> vars,
              std::span<const int> env) {
  if (t.is_var()) return env[static_cast<std::size_t>(var_slot(vars, t.head))];
  std::vector<int> args;
  args.reserve(t.args.size());
  for (const Term& sub : t.args) args.push_back(interpret(a, sub, vars, env));
  return a.apply(t.op, args);
}

SatResult satisfies(const FinAlgebra& a, const Equation& e) {
  const int n = a.carrier.size;
  std::vector<int> env(e.vars.size(), 0);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < e.vars.size(); ++i) total *= static_cast<std::uint64_t>(n);
  for (std::uint64_t it = 0; it < total; ++it) {
    if (interpret(a, e.lhs, e.vars, env) != interpret(a, e.rhs, e.vars, env))
      return {false, env};
    for (std::size_t j = env.size(); j-- > 0;) {
      if (++env[j] < n) break;
      env[j] = 0;
    }
  }
  return {true, {}};
}

// ---------------------------------------------------------------------------

std::vector<int> prepare_positions(const Term& t, std::span<const std::string> vars) {
  std::vector<int> out;
  for (const std::string& v : arg_word(t)) out.push_back(var_slot(vars, v));
  return out;
}

FinFun prepare_fun(const Term& t, std::span<const std::string> vars, int carrier_size) {
  std::vector<int> pos = prepare_positions(t, vars);
  return select_coords(carrier_size, static_cast<int>(vars.size()), pos);
}

namespace {

// Value of t on one argument-word window, consuming entries left to right.
int eval_window(const FinAlgebra& a, const Term& t, std::span<const int> word, std::size_t& next) {
  if (t.is_var()) return word[next++];
  std::vector<int> args;
  args.reserve(t.args.size());
  for (const Term& sub : t.args) args.push_back(eval_window(a, sub, word, next));
  return a.apply(t.op, args);
}

}  // namespace

FinFun evaluate_fun(const FinAlgebra& a, const Term& t) {
  int k = static_cast<int>(arg_word(t).size());
  ProductSet p = power(a.carrier, k);
  FinFun f{p.set.size, a.carrier.size, std::vector<int>(static_cast<std::size_t>(p.set.size))};
  for (int i = 0; i < p.set.size; ++i) {
    std::vector<int> word = p.tuple_of(i);
    std::size_t next = 0;
    f.table[static_cast<std::size_t>(i)] = eval_window(a, t, word, next);
  }
  return f;
}

// ---------------------------------------------------------------------------

LiftedAlgebra::LiftedAlgebra(MonadPtr t, FinAlgebra base) : t_(std::move(t)), base_(std::move(base)) {
  validate(base_);
}

TObject LiftedAlgebra::apply(int op, std::span<const TObject> args) const {
  const FinFun& table = base_.ops[static_cast<std::size_t>(op)];
  if (args.empty()) return t_->unit(base_.carrier, table(0));
  std::vector<FinSet> factors(args.size(), base_.carrier);
  TObject paired = psi_n(*t_, factors, args);
  return t_->map(table, paired);
}

TObject LiftedAlgebra::interpret(const Term& t, std::span<const std::string> vars,
                                 std::span<const TObject> env) const {
  if (t.is_var()) return env[static_cast<std::size_t>(var_slot(vars, t.head))];
  std::vector<TObject> args;
  args.reserve(t.args.size());
  for (const Term& sub : t.args) args.push_back(interpret(sub, vars, env));
  return apply(t.op, args);
}

FinAlgebra LiftedAlgebra::tabulate(std::uint64_t budget) const {
  std::uint64_t n = enumerable_size(*t_, base_.carrier, budget);
  std::vector<TObject> carrier = enumerate_carrier(*t_, base_.carrier, budget);
  FinAlgebra out;
  out.sig = base_.sig;
  out.carrier = fin(static_cast<int>(n));
  for (int i = 0; i < base_.sig.size(); ++i) {
    int arity = base_.sig.at(i).arity;
    std::uint64_t dom = 1;
    for (int j = 0; j < arity; ++j) {
      if (dom > budget / (n ? n : 1)) throw BudgetError("lifted table exceeds budget");
      dom *= n;
    }
    if (dom > budget) throw BudgetError("lifted table exceeds budget");
    FinFun f{static_cast<int>(dom), static_cast<int>(n),
             std::vector<int>(static_cast<std::size_t>(dom))};
    std::vector<int> tuple(static_cast<std::size_t>(arity), 0);
    std::vector<TObject> args(static_cast<std::size_t>(arity));
    for (std::uint64_t idx = 0; idx < dom; ++idx) {
      std::uint64_t rest = idx;
      for (int j = arity; j-- > 0;) {
        tuple[static_cast<std::size_t>(j)] = static_cast<int>(rest % n);
        rest /= n;
      }
      for (int j = 0; j < arity; ++j)
        args[static_cast<std::size_t>(j)] = carrier[static_cast<std::size_t>(tuple[static_cast<std::size_t>(j)])];
      f.table[static_cast<std::size_t>(idx)] = static_cast<int>(t_->index_of(apply(i, args)));
    }
    out.ops.push_back(std::move(f));
  }
  return out;
}

LiftedAlgebra lift(MonadPtr t, FinAlgebra base) { return LiftedAlgebra(std::move(t), std::move(base)); }

// ---------------------------------------------------------------------------

AlgebraRange::AlgebraRange(Signature sig, int carrier_size, std::uint64_t budget)
    : sig_(std::move(sig)), carrier_(carrier_size), budget_(budget) {
  if (carrier_size <= 0) throw StructuralError("carrier size must be positive");
  count_ = 1;
  for (int i = 0; i < sig_.size(); ++i) {
    std::int64_t cells = 1;
    for (int j = 0; j < sig_.at(i).arity; ++j) cells *= carrier_size;
    table_sizes_.push_back(cells);
    for (std::int64_t c = 0; c < cells; ++c) count_ *= carrier_size;
  }
}

std::uint64_t AlgebraRange::size() const {
  if (count_ > budget_) {
    std::ostringstream os;
    os << "algebra space of size " << count_ << " exceeds budget " << budget_;
    throw BudgetError(os.str());
  }
  return count_.convert_to<std::uint64_t>();
}

FinAlgebra AlgebraRange::at(std::uint64_t ordinal) const {
  if (BigInt(ordinal) >= count_) throw StructuralError("algebra ordinal out of range");
  FinAlgebra a;
  a.sig = sig_;
  a.carrier = fin(carrier_);
  a.ops.resize(static_cast<std::size_t>(sig_.size()));
  // Digits from the least significant table cell: the last symbol's last cell
  // varies fastest, giving lexicographic order over concatenated tables.
  std::uint64_t rest = ordinal;
  for (int i = sig_.size(); i-- > 0;) {
    std::int64_t cells = table_sizes_[static_cast<std::size_t>(i)];
    FinFun f{static_cast<int>(cells), carrier_, std::vector<int>(static_cast<std::size_t>(cells))};
    for (std::int64_t c = cells; c-- > 0;) {
      f.table[static_cast<std::size_t>(c)] = static_cast<int>(rest % carrier_);
      rest /= static_cast<std::uint64_t>(carrier_);
    }
    a.ops[static_cast<std::size_t>(i)] = std::move(f);
  }
  return a;
}

AlgebraRange enumerate_algebras(const Signature& sig, int carrier_size, std::uint64_t budget) {
  return AlgebraRange(sig, carrier_size, budget);
}

FinAlgebra projection_algebra(int base_size, int n, std::span<const int> wires) {
  if (static_cast<int>(wires.size()) != n) throw StructuralError("need one wire per coordinate");
  for (int w : wires)
    if (w < 1 || w > 2 * n) throw StructuralError("wire index out of range");
  ProductSet carrier = power(fin(base_size), n);
  int size = carrier.set.size;
  FinFun m{size * size, size, std::vector<int>(static_cast<std::size_t>(size) * size)};
  for (int a = 0; a < size; ++a) {
    std::vector<int> left = carrier.tuple_of(a);
    for (int b = 0; b < size; ++b) {
      std::vector<int> right = carrier.tuple_of(b);
      std::vector<int> out(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        int w = wires[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(j)] =
            w <= n ? left[static_cast<std::size_t>(w - 1)] : right[static_cast<std::size_t>(w - n - 1)];
      }
      m.table[static_cast<std::size_t>(a * size + b)] = static_cast<int>(carrier.index_of(out));
    }
  }
  FinAlgebra alg;
  alg.sig = Signature({{"m", 2}});
  alg.carrier = fin(size);
  alg.ops.push_back(std::move(m));
  return alg;
}

}  // namespace monpres
