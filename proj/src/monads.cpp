#include "monpres/monads.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace monpres {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw StructuralError(msg);
}

template <class T>
const T& as(const TObject& u, const char* what) {
  const T* p = std::get_if<T>(&u.payload);
  if (!p) throw StructuralError(std::string("TObject has the wrong shape for ") + what);
  return *p;
}

std::uint64_t checked_pow(std::uint64_t base, int exp, const char* what) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::uint64_t{1} << 62) / base) throw BudgetError(what);
    r *= base;
  }
  return r;
}

}  // namespace

BigInt Monad::t1_count() const { return carrier_count(terminal()); }

bool tobject_less(const TObject& a, const TObject& b) {
  if (a.base != b.base) return a.base < b.base;
  if (a.payload.index() != b.payload.index()) return a.payload.index() < b.payload.index();
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.payload);
        if constexpr (std::is_same_v<T, DistElem>) {
          return std::lexicographical_compare(x.weight.begin(), x.weight.end(), y.weight.begin(),
                                              y.weight.end());
        } else {
          return x < y;
        }
      },
      a.payload);
}

std::string to_string(const TObject& u) {
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Subset>) {
          os << '{';
          bool first = true;
          for (std::size_t i = 0; i < x.in.size(); ++i)
            if (x.in[i]) {
              if (!first) os << ',';
              os << i;
              first = false;
            }
          os << '}';
        } else if constexpr (std::is_same_v<T, MultisetElem>) {
          os << "multiset[";
          for (std::size_t i = 0; i < x.coeff.size(); ++i) {
            if (i) os << ',';
            os << x.coeff[i];
          }
          os << ']';
        } else if constexpr (std::is_same_v<T, DistElem>) {
          os << "dist(";
          for (std::size_t i = 0; i < x.weight.size(); ++i) {
            if (i) os << ',';
            os << x.weight[i].str();
          }
          os << ')';
        } else if constexpr (std::is_same_v<T, MaybeElem>) {
          if (x.value == u.base)
            os << "none";
          else
            os << "just(" << x.value << ')';
        } else if constexpr (std::is_same_v<T, WriterElem>) {
          os << '(' << x.mon << ',' << x.value << ')';
        } else {
          os << '[';
          for (std::size_t i = 0; i < x.table.size(); ++i) {
            if (i) os << ',';
            os << x.table[i];
          }
          os << ']';
        }
      },
      u.payload);
  return os.str();
}

std::string tobject_json(const TObject& u) {
  nlohmann::ordered_json j;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Subset>) {
          std::vector<int> members;
          for (std::size_t i = 0; i < x.in.size(); ++i)
            if (x.in[i]) members.push_back(static_cast<int>(i));
          j["subset"] = members;
        } else if constexpr (std::is_same_v<T, MultisetElem>) {
          j["multiset"] = x.coeff;
        } else if constexpr (std::is_same_v<T, DistElem>) {
          std::vector<std::string> ws;
          for (const Rational& w : x.weight) ws.push_back(w.str());
          j["dist"] = ws;
        } else if constexpr (std::is_same_v<T, MaybeElem>) {
          if (x.value == u.base)
            j["maybe"] = nullptr;
          else
            j["maybe"] = x.value;
        } else if constexpr (std::is_same_v<T, WriterElem>) {
          j["writer"] = {x.mon, x.value};
        } else {
          j["reader"] = x.table;
        }
      },
      u.payload);
  j["base"] = u.base;
  return j.dump();
}

// ---------------------------------------------------------------------------

namespace {

class PowersetMonad final : public Monad {
 public:
  explicit PowersetMonad(bool nonempty)
      : Monad(nonempty ? "powerset+" : "powerset"), nonempty_(nonempty) {}

  Tier tier() const override { return Tier::Enumerable; }

  BigInt carrier_count(const FinSet& x) const override {
    BigInt c = BigInt(1) << x.size;
    return nonempty_ ? c - 1 : c;
  }

  TObject carrier_at(const FinSet& x, std::uint64_t i) const override {
    if (x.size > 62) throw BudgetError("subset index space too large");
    std::uint64_t mask = nonempty_ ? i + 1 : i;
    require(mask < (std::uint64_t{1} << x.size), "subset index out of range");
    Subset s;
    s.in.resize(static_cast<std::size_t>(x.size));
    for (int j = 0; j < x.size; ++j) s.in[static_cast<std::size_t>(j)] = (mask >> (x.size - 1 - j)) & 1;
    return TObject{x.size, std::move(s)};
  }

  std::uint64_t index_of(const TObject& u) const override {
    const Subset& s = as<Subset>(u, name_.c_str());
    require(static_cast<int>(s.in.size()) == u.base, "subset length mismatch");
    if (u.base > 62) throw BudgetError("subset index space too large");
    std::uint64_t mask = 0;
    for (int j = 0; j < u.base; ++j)
      mask = (mask << 1) | (s.in[static_cast<std::size_t>(j)] ? 1u : 0u);
    if (nonempty_) {
      require(mask != 0, "empty subset in non-empty powerset");
      return mask - 1;
    }
    return mask;
  }

  TObject random_element(const FinSet& x, Rng& rng) const override {
    Subset s;
    s.in.resize(static_cast<std::size_t>(x.size));
    bool any = false;
    for (int j = 0; j < x.size; ++j) {
      bool b = rng.below(2) == 1;
      s.in[static_cast<std::size_t>(j)] = b;
      any = any || b;
    }
    if (nonempty_ && !any) {
      require(x.size > 0, "non-empty powerset over the empty set");
      s.in[static_cast<std::size_t>(rng.below_int(x.size))] = true;
    }
    return TObject{x.size, std::move(s)};
  }

  TObject unit(const FinSet& x, int v) const override {
    require(v >= 0 && v < x.size, "unit value out of range");
    Subset s;
    s.in.resize(static_cast<std::size_t>(x.size));
    s.in[static_cast<std::size_t>(v)] = true;
    return TObject{x.size, std::move(s)};
  }

  TObject map(const FinFun& f, const TObject& u) const override {
    const Subset& s = as<Subset>(u, name_.c_str());
    require(u.base == f.dom, "map: element not over the function domain");
    Subset out;
    out.in.resize(static_cast<std::size_t>(f.cod));
    for (int j = 0; j < f.dom; ++j)
      if (s.in[static_cast<std::size_t>(j)]) out.in[static_cast<std::size_t>(f(j))] = true;
    return TObject{f.cod, std::move(out)};
  }

  TObject flatten(const TObject& outer, std::span<const TObject> inner,
                  const FinSet& x) const override {
    const Subset& o = as<Subset>(outer, name_.c_str());
    require(outer.base == static_cast<int>(inner.size()), "flatten: outer base mismatch");
    Subset out;
    out.in.resize(static_cast<std::size_t>(x.size));
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (!o.in[i]) continue;
      const Subset& s = as<Subset>(inner[i], name_.c_str());
      require(inner[i].base == x.size, "flatten: inner element not over X");
      for (int j = 0; j < x.size; ++j)
        if (s.in[static_cast<std::size_t>(j)]) out.in[static_cast<std::size_t>(j)] = true;
    }
    return TObject{x.size, std::move(out)};
  }

  TObject psi(const TObject& u, const TObject& v, const FinSet& x, const FinSet& y) const override {
    const Subset& a = as<Subset>(u, name_.c_str());
    const Subset& b = as<Subset>(v, name_.c_str());
    require(u.base == x.size && v.base == y.size, "psi: element not over its set");
    Subset out;
    out.in.resize(static_cast<std::size_t>(x.size) * static_cast<std::size_t>(y.size));
    for (int i = 0; i < x.size; ++i) {
      if (!a.in[static_cast<std::size_t>(i)]) continue;
      for (int j = 0; j < y.size; ++j)
        if (b.in[static_cast<std::size_t>(j)])
          out.in[static_cast<std::size_t>(i * y.size + j)] = true;
    }
    return TObject{x.size * y.size, std::move(out)};
  }

 private:
  bool nonempty_;
};

class MultisetMonad final : public Monad {
 public:
  explicit MultisetMonad(SemiringTable s)
      : Monad("multiset(" + std::to_string(s.size) + ")"), s_(std::move(s)) {
    if (auto v = validate_semiring(s_))
      throw StructuralError("multiset monad needs a valid semiring; axiom failed: " + v->axiom);
    if (!s_.commutative_mul())
      throw StructuralError("multiset monad needs commutative multiplication");
  }

  const SemiringTable& semiring() const { return s_; }

  Tier tier() const override { return Tier::Enumerable; }

  BigInt carrier_count(const FinSet& x) const override {
    BigInt c = 1;
    for (int i = 0; i < x.size; ++i) c *= s_.size;
    return c;
  }

  TObject carrier_at(const FinSet& x, std::uint64_t i) const override {
    std::uint64_t total = checked_pow(static_cast<std::uint64_t>(s_.size), x.size,
                                      "multiset index space too large");
    require(i < total, "multiset index out of range");
    MultisetElem m;
    m.coeff.resize(static_cast<std::size_t>(x.size));
    for (int j = x.size; j-- > 0;) {
      m.coeff[static_cast<std::size_t>(j)] = static_cast<int>(i % s_.size);
      i /= s_.size;
    }
    return TObject{x.size, std::move(m)};
  }

  std::uint64_t index_of(const TObject& u) const override {
    const MultisetElem& m = as<MultisetElem>(u, name_.c_str());
    require(static_cast<int>(m.coeff.size()) == u.base, "multiset length mismatch");
    checked_pow(static_cast<std::uint64_t>(s_.size), u.base, "multiset index space too large");
    std::uint64_t idx = 0;
    for (int c : m.coeff) {
      require(c >= 0 && c < s_.size, "multiset coefficient out of range");
      idx = idx * s_.size + static_cast<std::uint64_t>(c);
    }
    return idx;
  }

  TObject random_element(const FinSet& x, Rng& rng) const override {
    MultisetElem m;
    m.coeff.resize(static_cast<std::size_t>(x.size));
    for (int j = 0; j < x.size; ++j) m.coeff[static_cast<std::size_t>(j)] = rng.below_int(s_.size);
    return TObject{x.size, std::move(m)};
  }

  TObject unit(const FinSet& x, int v) const override {
    require(v >= 0 && v < x.size, "unit value out of range");
    MultisetElem m;
    m.coeff.assign(static_cast<std::size_t>(x.size), s_.zero);
    m.coeff[static_cast<std::size_t>(v)] = s_.one;
    return TObject{x.size, std::move(m)};
  }

  TObject map(const FinFun& f, const TObject& u) const override {
    const MultisetElem& m = as<MultisetElem>(u, name_.c_str());
    require(u.base == f.dom, "map: element not over the function domain");
    MultisetElem out;
    out.coeff.assign(static_cast<std::size_t>(f.cod), s_.zero);
    for (int j = 0; j < f.dom; ++j) {
      int& slot = out.coeff[static_cast<std::size_t>(f(j))];
      slot = s_.plus(slot, m.coeff[static_cast<std::size_t>(j)]);
    }
    return TObject{f.cod, std::move(out)};
  }

  TObject flatten(const TObject& outer, std::span<const TObject> inner,
                  const FinSet& x) const override {
    const MultisetElem& o = as<MultisetElem>(outer, name_.c_str());
    require(outer.base == static_cast<int>(inner.size()), "flatten: outer base mismatch");
    MultisetElem out;
    out.coeff.assign(static_cast<std::size_t>(x.size), s_.zero);
    for (std::size_t i = 0; i < inner.size(); ++i) {
      int w = o.coeff[i];
      if (w == s_.zero) continue;
      const MultisetElem& m = as<MultisetElem>(inner[i], name_.c_str());
      require(inner[i].base == x.size, "flatten: inner element not over X");
      for (int j = 0; j < x.size; ++j) {
        int& slot = out.coeff[static_cast<std::size_t>(j)];
        slot = s_.plus(slot, s_.times(w, m.coeff[static_cast<std::size_t>(j)]));
      }
    }
    return TObject{x.size, std::move(out)};
  }

  TObject psi(const TObject& u, const TObject& v, const FinSet& x, const FinSet& y) const override {
    const MultisetElem& a = as<MultisetElem>(u, name_.c_str());
    const MultisetElem& b = as<MultisetElem>(v, name_.c_str());
    require(u.base == x.size && v.base == y.size, "psi: element not over its set");
    MultisetElem out;
    out.coeff.resize(static_cast<std::size_t>(x.size) * static_cast<std::size_t>(y.size));
    for (int i = 0; i < x.size; ++i)
      for (int j = 0; j < y.size; ++j)
        out.coeff[static_cast<std::size_t>(i * y.size + j)] =
            s_.times(a.coeff[static_cast<std::size_t>(i)], b.coeff[static_cast<std::size_t>(j)]);
    return TObject{x.size * y.size, std::move(out)};
  }

 private:
  SemiringTable s_;
};

class DistMonad final : public Monad {
 public:
  explicit DistMonad(int max_den) : Monad("dist"), max_den_(max_den) {
    if (max_den < 1) throw StructuralError("denominator bound must be positive");
  }

  int max_denominator() const { return max_den_; }

  Tier tier() const override { return Tier::Sampleable; }

  BigInt t1_count() const override { return 1; }  // only the point mass

  BigInt carrier_count(const FinSet&) const override {
    throw CapabilityError("distribution carrier is not enumerable");
  }
  TObject carrier_at(const FinSet&, std::uint64_t) const override {
    throw CapabilityError("distribution carrier is not enumerable");
  }
  std::uint64_t index_of(const TObject&) const override {
    throw CapabilityError("distribution carrier is not enumerable");
  }

  TObject random_element(const FinSet& x, Rng& rng) const override {
    require(x.size > 0, "no distribution over the empty set");
    DistElem d;
    d.weight.assign(static_cast<std::size_t>(x.size), Rational(0));
    Rational total(0);
    while (total == 0) {
      for (int j = 0; j < x.size; ++j) {
        bool in_support = rng.below(2) == 1;
        Rational w = in_support ? Rational(1 + static_cast<int>(rng.below(
                                                  static_cast<std::uint64_t>(max_den_))))
                                : Rational(0);
        d.weight[static_cast<std::size_t>(j)] = w;
        total += w;
      }
    }
    for (Rational& w : d.weight) w /= total;
    return TObject{x.size, std::move(d)};
  }

  TObject unit(const FinSet& x, int v) const override {
    require(v >= 0 && v < x.size, "unit value out of range");
    DistElem d;
    d.weight.assign(static_cast<std::size_t>(x.size), Rational(0));
    d.weight[static_cast<std::size_t>(v)] = 1;
    return TObject{x.size, std::move(d)};
  }

  TObject map(const FinFun& f, const TObject& u) const override {
    const DistElem& d = as<DistElem>(u, name_.c_str());
    require(u.base == f.dom, "map: element not over the function domain");
    DistElem out;
    out.weight.assign(static_cast<std::size_t>(f.cod), Rational(0));
    for (int j = 0; j < f.dom; ++j)
      out.weight[static_cast<std::size_t>(f(j))] += d.weight[static_cast<std::size_t>(j)];
    return TObject{f.cod, std::move(out)};
  }

  TObject flatten(const TObject& outer, std::span<const TObject> inner,
                  const FinSet& x) const override {
    const DistElem& o = as<DistElem>(outer, name_.c_str());
    require(outer.base == static_cast<int>(inner.size()), "flatten: outer base mismatch");
    DistElem out;
    out.weight.assign(static_cast<std::size_t>(x.size), Rational(0));
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (o.weight[i] == 0) continue;
      const DistElem& d = as<DistElem>(inner[i], name_.c_str());
      require(inner[i].base == x.size, "flatten: inner element not over X");
      for (int j = 0; j < x.size; ++j)
        out.weight[static_cast<std::size_t>(j)] += o.weight[i] * d.weight[static_cast<std::size_t>(j)];
    }
    return TObject{x.size, std::move(out)};
  }

  TObject psi(const TObject& u, const TObject& v, const FinSet& x, const FinSet& y) const override {
    const DistElem& a = as<DistElem>(u, name_.c_str());
    const DistElem& b = as<DistElem>(v, name_.c_str());
    require(u.base == x.size && v.base == y.size, "psi: element not over its set");
    DistElem out;
    out.weight.resize(static_cast<std::size_t>(x.size) * static_cast<std::size_t>(y.size));
    for (int i = 0; i < x.size; ++i)
      for (int j = 0; j < y.size; ++j)
        out.weight[static_cast<std::size_t>(i * y.size + j)] =
            a.weight[static_cast<std::size_t>(i)] * b.weight[static_cast<std::size_t>(j)];
    return TObject{x.size * y.size, std::move(out)};
  }

 private:
  int max_den_;
};

class MaybeMonad final : public Monad {
 public:
  MaybeMonad() : Monad("maybe") {}

  Tier tier() const override { return Tier::Enumerable; }

  BigInt carrier_count(const FinSet& x) const override { return x.size + 1; }

  TObject carrier_at(const FinSet& x, std::uint64_t i) const override {
    require(i <= static_cast<std::uint64_t>(x.size), "maybe index out of range");
    return TObject{x.size, MaybeElem{static_cast<int>(i)}};
  }

  std::uint64_t index_of(const TObject& u) const override {
    const MaybeElem& m = as<MaybeElem>(u, name_.c_str());
    require(m.value >= 0 && m.value <= u.base, "maybe value out of range");
    return static_cast<std::uint64_t>(m.value);
  }

  TObject random_element(const FinSet& x, Rng& rng) const override {
    return TObject{x.size, MaybeElem{rng.below_int(x.size + 1)}};
  }

  TObject unit(const FinSet& x, int v) const override {
    require(v >= 0 && v < x.size, "unit value out of range");
    return TObject{x.size, MaybeElem{v}};
  }

  TObject map(const FinFun& f, const TObject& u) const override {
    const MaybeElem& m = as<MaybeElem>(u, name_.c_str());
    require(u.base == f.dom, "map: element not over the function domain");
    if (m.value == u.base) return TObject{f.cod, MaybeElem{f.cod}};
    return TObject{f.cod, MaybeElem{f(m.value)}};
  }

  TObject flatten(const TObject& outer, std::span<const TObject> inner,
                  const FinSet& x) const override {
    const MaybeElem& o = as<MaybeElem>(outer, name_.c_str());
    require(outer.base == static_cast<int>(inner.size()), "flatten: outer base mismatch");
    if (o.value == outer.base) return TObject{x.size, MaybeElem{x.size}};
    const TObject& in = inner[static_cast<std::size_t>(o.value)];
    as<MaybeElem>(in, name_.c_str());
    require(in.base == x.size, "flatten: inner element not over X");
    return in;
  }

  TObject psi(const TObject& u, const TObject& v, const FinSet& x, const FinSet& y) const override {
    const MaybeElem& a = as<MaybeElem>(u, name_.c_str());
    const MaybeElem& b = as<MaybeElem>(v, name_.c_str());
    require(u.base == x.size && v.base == y.size, "psi: element not over its set");
    int n = x.size * y.size;
    if (a.value == u.base || b.value == v.base) return TObject{n, MaybeElem{n}};
    return TObject{n, MaybeElem{a.value * y.size + b.value}};
  }
};

class WriterMonad final : public Monad {
 public:
  explicit WriterMonad(MonoidTable m)
      : Monad("writer(" + std::to_string(m.size) + ")"), m_(std::move(m)) {
    if (auto v = validate_monoid(m_))
      throw StructuralError("writer monad needs a valid monoid; axiom failed: " + v->axiom);
    for (int a = 0; a < m_.size; ++a)
      for (int b = 0; b < m_.size; ++b)
        if (m_.times(a, b) != m_.times(b, a))
          throw StructuralError("writer monad needs a commutative monoid");
  }

  const MonoidTable& monoid() const { return m_; }

  Tier tier() const override { return Tier::Enumerable; }

  BigInt carrier_count(const FinSet& x) const override { return BigInt(m_.size) * x.size; }

  TObject carrier_at(const FinSet& x, std::uint64_t i) const override {
    require(x.size > 0 && i < static_cast<std::uint64_t>(m_.size) * x.size,
            "writer index out of range");
    return TObject{x.size, WriterElem{static_cast<int>(i / x.size), static_cast<int>(i % x.size)}};
  }

  std::uint64_t index_of(const TObject& u) const override {
    const WriterElem& w = as<WriterElem>(u, name_.c_str());
    require(w.mon >= 0 && w.mon < m_.size && w.value >= 0 && w.value < u.base,
            "writer element out of range");
    return static_cast<std::uint64_t>(w.mon) * u.base + static_cast<std::uint64_t>(w.value);
  }

  TObject random_element(const FinSet& x, Rng& rng) const override {
    require(x.size > 0, "writer over the empty set is empty");
    return TObject{x.size, WriterElem{rng.below_int(m_.size), rng.below_int(x.size)}};
  }

  TObject unit(const FinSet& x, int v) const override {
    require(v >= 0 && v < x.size, "unit value out of range");
    return TObject{x.size, WriterElem{m_.unit, v}};
  }

  TObject map(const FinFun& f, const TObject& u) const override {
    const WriterElem& w = as<WriterElem>(u, name_.c_str());
    require(u.base == f.dom, "map: element not over the function domain");
    return TObject{f.cod, WriterElem{w.mon, f(w.value)}};
  }

  TObject flatten(const TObject& outer, std::span<const TObject> inner,
                  const FinSet& x) const override {
    const WriterElem& o = as<WriterElem>(outer, name_.c_str());
    require(outer.base == static_cast<int>(inner.size()), "flatten: outer base mismatch");
    const TObject& in = inner[static_cast<std::size_t>(o.value)];
    const WriterElem& w = as<WriterElem>(in, name_.c_str());
    require(in.base == x.size, "flatten: inner element not over X");
    return TObject{x.size, WriterElem{m_.times(o.mon, w.mon), w.value}};
  }

  TObject psi(const TObject& u, const TObject& v, const FinSet& x, const FinSet& y) const override {
    const WriterElem& a = as<WriterElem>(u, name_.c_str());
    const WriterElem& b = as<WriterElem>(v, name_.c_str());
    require(u.base == x.size && v.base == y.size, "psi: element not over its set");
    return TObject{x.size * y.size,
                   WriterElem{m_.times(a.mon, b.mon), a.value * y.size + b.value}};
  }

 private:
  MonoidTable m_;
};

class ReaderMonad final : public Monad {
 public:
  explicit ReaderMonad(int exponent)
      : Monad("reader(" + std::to_string(exponent) + ")"), k_(exponent) {
    if (exponent < 1) throw StructuralError("reader exponent must be positive");
  }

  int exponent() const { return k_; }

  Tier tier() const override { return Tier::Enumerable; }

  BigInt carrier_count(const FinSet& x) const override {
    BigInt c = 1;
    for (int i = 0; i < k_; ++i) c *= x.size;
    return c;
  }

  TObject carrier_at(const FinSet& x, std::uint64_t i) const override {
    std::uint64_t total =
        checked_pow(static_cast<std::uint64_t>(x.size), k_, "reader index space too large");
    require(i < total, "reader index out of range");
    ReaderElem r;
    r.table.resize(static_cast<std::size_t>(k_));
    for (int j = k_; j-- > 0;) {
      r.table[static_cast<std::size_t>(j)] = static_cast<int>(i % x.size);
      i /= static_cast<std::uint64_t>(x.size);
    }
    return TObject{x.size, std::move(r)};
  }

  std::uint64_t index_of(const TObject& u) const override {
    const ReaderElem& r = as<ReaderElem>(u, name_.c_str());
    require(static_cast<int>(r.table.size()) == k_, "reader table length mismatch");
    checked_pow(static_cast<std::uint64_t>(u.base), k_, "reader index space too large");
    std::uint64_t idx = 0;
    for (int v : r.table) {
      require(v >= 0 && v < u.base, "reader value out of range");
      idx = idx * static_cast<std::uint64_t>(u.base) + static_cast<std::uint64_t>(v);
    }
    return idx;
  }

  TObject random_element(const FinSet& x, Rng& rng) const override {
    require(x.size > 0, "reader over the empty set is empty");
    ReaderElem r;
    r.table.resize(static_cast<std::size_t>(k_));
    for (int j = 0; j < k_; ++j) r.table[static_cast<std::size_t>(j)] = rng.below_int(x.size);
    return TObject{x.size, std::move(r)};
  }

  TObject unit(const FinSet& x, int v) const override {
    require(v >= 0 && v < x.size, "unit value out of range");
    ReaderElem r;
    r.table.assign(static_cast<std::size_t>(k_), v);
    return TObject{x.size, std::move(r)};
  }

  TObject map(const FinFun& f, const TObject& u) const override {
    const ReaderElem& r = as<ReaderElem>(u, name_.c_str());
    require(u.base == f.dom, "map: element not over the function domain");
    ReaderElem out;
    out.table.resize(r.table.size());
    for (std::size_t j = 0; j < r.table.size(); ++j) out.table[j] = f(r.table[j]);
    return TObject{f.cod, std::move(out)};
  }

  TObject flatten(const TObject& outer, std::span<const TObject> inner,
                  const FinSet& x) const override {
    const ReaderElem& o = as<ReaderElem>(outer, name_.c_str());
    require(outer.base == static_cast<int>(inner.size()), "flatten: outer base mismatch");
    ReaderElem out;
    out.table.resize(static_cast<std::size_t>(k_));
    for (int a = 0; a < k_; ++a) {
      const TObject& in = inner[static_cast<std::size_t>(o.table[static_cast<std::size_t>(a)])];
      const ReaderElem& r = as<ReaderElem>(in, name_.c_str());
      require(in.base == x.size, "flatten: inner element not over X");
      out.table[static_cast<std::size_t>(a)] = r.table[static_cast<std::size_t>(a)];
    }
    return TObject{x.size, std::move(out)};
  }

  TObject psi(const TObject& u, const TObject& v, const FinSet& x, const FinSet& y) const override {
    const ReaderElem& a = as<ReaderElem>(u, name_.c_str());
    const ReaderElem& b = as<ReaderElem>(v, name_.c_str());
    require(u.base == x.size && v.base == y.size, "psi: element not over its set");
    ReaderElem out;
    out.table.resize(static_cast<std::size_t>(k_));
    for (int j = 0; j < k_; ++j)
      out.table[static_cast<std::size_t>(j)] =
          a.table[static_cast<std::size_t>(j)] * y.size + b.table[static_cast<std::size_t>(j)];
    return TObject{x.size * y.size, std::move(out)};
  }

 private:
  int k_;
};

}  // namespace

MonadPtr powerset() { return std::make_shared<PowersetMonad>(false); }
MonadPtr powerset_nonempty() { return std::make_shared<PowersetMonad>(true); }
MonadPtr multiset(SemiringTable s) { return std::make_shared<MultisetMonad>(std::move(s)); }
MonadPtr dist(int max_denominator) { return std::make_shared<DistMonad>(max_denominator); }
MonadPtr maybe() { return std::make_shared<MaybeMonad>(); }
MonadPtr writer(MonoidTable m) { return std::make_shared<WriterMonad>(std::move(m)); }
MonadPtr reader(int exponent) { return std::make_shared<ReaderMonad>(exponent); }

const SemiringTable* multiset_semiring(const Monad& t) {
  const auto* p = dynamic_cast<const MultisetMonad*>(&t);
  return p ? &p->semiring() : nullptr;
}

const MonoidTable* writer_monoid(const Monad& t) {
  const auto* p = dynamic_cast<const WriterMonad*>(&t);
  return p ? &p->monoid() : nullptr;
}

int reader_exponent(const Monad& t) {
  const auto* p = dynamic_cast<const ReaderMonad*>(&t);
  return p ? p->exponent() : 0;
}

int dist_max_denominator(const Monad& t) {
  const auto* p = dynamic_cast<const DistMonad*>(&t);
  return p ? p->max_denominator() : 0;
}

MonadPtr parse_monad(const std::string& selector) {
  if (selector == "powerset") return powerset();
  if (selector == "powerset+") return powerset_nonempty();
  if (selector == "maybe") return maybe();
  if (selector == "dist") return dist();
  auto colon = selector.find(':');
  if (colon != std::string::npos) {
    std::string kind = selector.substr(0, colon);
    std::string arg = selector.substr(colon + 1);
    if (kind == "reader") {
      try {
        std::size_t pos = 0;
        int k = std::stoi(arg, &pos);
        if (pos == arg.size()) return reader(k);
      } catch (const std::exception&) {
      }
      throw StructuralError("reader selector needs an integer exponent: " + selector);
    }
    if (kind == "writer") return writer(load_monoid(arg));
    if (kind == "multiset") return multiset(load_semiring(arg));
  }
  throw StructuralError("unknown monad selector: " + selector);
}

// ---------------------------------------------------------------------------

TObject psi0(const Monad& t) { return t.unit(terminal(), 0); }

TObject psi_n(const Monad& t, std::span<const FinSet> xs, std::span<const TObject> us) {
  require(xs.size() == us.size(), "psi_n: factor count mismatch");
  if (xs.empty()) return psi0(t);
  TObject acc = us[0];
  FinSet acc_set = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    acc = t.psi(acc, us[i], acc_set, xs[i]);
    acc_set = fin(acc_set.size * xs[i].size);
  }
  return acc;
}

std::pair<TObject, TObject> chi(const Monad& t, const FinSet& x, const FinSet& y,
                                const TObject& w) {
  std::array<FinSet, 2> fs{x, y};
  ProductSet p = product(fs);
  return {t.map(projection(p, 0), w), t.map(projection(p, 1), w)};
}

std::vector<TObject> chi_n(const Monad& t, std::span<const FinSet> xs, const TObject& w) {
  ProductSet p = product(xs);
  std::vector<TObject> out;
  out.reserve(xs.size());
  for (int j = 0; j < static_cast<int>(xs.size()); ++j) out.push_back(t.map(projection(p, j), w));
  return out;
}

std::uint64_t enumerable_size(const Monad& t, const FinSet& x, std::uint64_t budget) {
  if (t.tier() != Tier::Enumerable)
    throw CapabilityError("operation needs an enumerable carrier: " + t.name());
  BigInt c = t.carrier_count(x);
  if (c > budget) {
    std::ostringstream os;
    os << "carrier of size " << c << " exceeds budget " << budget;
    throw BudgetError(os.str());
  }
  return c.convert_to<std::uint64_t>();
}

std::vector<TObject> enumerate_carrier(const Monad& t, const FinSet& x, std::uint64_t budget) {
  std::uint64_t n = enumerable_size(t, x, budget);
  std::vector<TObject> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(t.carrier_at(x, i));
  return out;
}

FinFun map_fun(const Monad& t, const FinFun& f, const FinSet& x, const FinSet& y,
               std::uint64_t budget) {
  require(f.dom == x.size && f.cod == y.size, "map_fun: function shape mismatch");
  std::uint64_t nx = enumerable_size(t, x, budget);
  std::uint64_t ny = enumerable_size(t, y, budget);
  FinFun r{static_cast<int>(nx), static_cast<int>(ny),
           std::vector<int>(static_cast<std::size_t>(nx))};
  for (std::uint64_t i = 0; i < nx; ++i)
    r.table[static_cast<std::size_t>(i)] =
        static_cast<int>(t.index_of(t.map(f, t.carrier_at(x, i))));
  return r;
}

FinFun unit_fun(const Monad& t, const FinSet& x, std::uint64_t budget) {
  std::uint64_t n = enumerable_size(t, x, budget);
  FinFun r{x.size, static_cast<int>(n), std::vector<int>(static_cast<std::size_t>(x.size))};
  for (int v = 0; v < x.size; ++v)
    r.table[static_cast<std::size_t>(v)] = static_cast<int>(t.index_of(t.unit(x, v)));
  return r;
}

FinFun mult_fun(const Monad& t, const FinSet& x, std::uint64_t budget) {
  std::uint64_t n1 = enumerable_size(t, x, budget);
  std::vector<TObject> inner = enumerate_carrier(t, x, budget);
  FinSet x2 = fin(static_cast<int>(n1));
  std::uint64_t n2 = enumerable_size(t, x2, budget);
  FinFun r{static_cast<int>(n2), static_cast<int>(n1),
           std::vector<int>(static_cast<std::size_t>(n2))};
  for (std::uint64_t i = 0; i < n2; ++i)
    r.table[static_cast<std::size_t>(i)] =
        static_cast<int>(t.index_of(t.flatten(t.carrier_at(x2, i), inner, x)));
  return r;
}

}  // namespace monpres
