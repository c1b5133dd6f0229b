#include "monpres/core.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace monpres {

FinFun FinFun::identity(int n) {
  FinFun f{n, n, std::vector<int>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) f.table[static_cast<std::size_t>(i)] = i;
  return f;
}

FinFun FinFun::constant(int dom, int cod, int value) {
  if (value < 0 || value >= cod) throw StructuralError("constant value outside codomain");
  return FinFun{dom, cod, std::vector<int>(static_cast<std::size_t>(dom), value)};
}

void validate(const FinFun& f) {
  if (f.dom < 0 || f.cod < 0) throw StructuralError("negative set size");
  if (f.table.size() != static_cast<std::size_t>(f.dom))
    throw StructuralError("function table length does not match domain size");
  for (int v : f.table)
    if (v < 0 || v >= f.cod) throw StructuralError("function value outside codomain");
}

FinFun compose(const FinFun& g, const FinFun& f) {
  if (f.cod != g.dom) throw StructuralError("composition mismatch: codomain vs domain");
  FinFun r{f.dom, g.cod, std::vector<int>(f.table.size())};
  for (std::size_t i = 0; i < f.table.size(); ++i)
    r.table[i] = g.table[static_cast<std::size_t>(f.table[i])];
  return r;
}

std::int64_t checked_product(std::span<const int> sizes) {
  std::int64_t p = 1;
  for (int s : sizes) {
    if (s < 0) throw StructuralError("negative set size");
    if (s != 0 && p > (std::int64_t{1} << 62) / s) throw BudgetError("product size overflows");
    p *= s;
  }
  return p;
}

std::int64_t ProductSet::index_of(std::span<const int> tuple) const {
  if (tuple.size() != sizes.size()) throw StructuralError("tuple length mismatch");
  std::int64_t idx = 0;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (tuple[j] < 0 || tuple[j] >= sizes[j]) throw StructuralError("tuple entry out of range");
    idx = idx * sizes[j] + tuple[j];
  }
  return idx;
}

std::vector<int> ProductSet::tuple_of(std::int64_t index) const {
  std::vector<int> out(sizes.size());
  for (std::size_t j = sizes.size(); j-- > 0;) {
    out[j] = static_cast<int>(index % sizes[j]);
    index /= sizes[j];
  }
  return out;
}

ProductSet product(std::span<const FinSet> factors) {
  ProductSet p;
  p.sizes.reserve(factors.size());
  for (const FinSet& x : factors) p.sizes.push_back(x.size);
  p.set = fin(static_cast<int>(checked_product(p.sizes)));
  return p;
}

ProductSet power(const FinSet& x, int n) {
  std::vector<FinSet> fs(static_cast<std::size_t>(n), x);
  return product(fs);
}

FinFun projection(const ProductSet& p, int j) {
  if (j < 0 || j >= static_cast<int>(p.sizes.size())) throw StructuralError("bad projection index");
  FinFun f{p.set.size, p.sizes[static_cast<std::size_t>(j)], {}};
  f.table.resize(static_cast<std::size_t>(p.set.size));
  for (int i = 0; i < p.set.size; ++i)
    f.table[static_cast<std::size_t>(i)] = p.tuple_of(i)[static_cast<std::size_t>(j)];
  return f;
}

FinFun diagonal(const FinSet& x, int n) {
  ProductSet p = power(x, n);
  FinFun f{x.size, p.set.size, std::vector<int>(static_cast<std::size_t>(x.size))};
  std::vector<int> tuple(static_cast<std::size_t>(n));
  for (int v = 0; v < x.size; ++v) {
    for (int j = 0; j < n; ++j) tuple[static_cast<std::size_t>(j)] = v;
    f.table[static_cast<std::size_t>(v)] = static_cast<int>(p.index_of(tuple));
  }
  return f;
}

FinFun swap_pair(const FinSet& x, const FinSet& y) {
  std::int64_t n = checked_product(std::array<int, 2>{x.size, y.size});
  FinFun f{static_cast<int>(n), static_cast<int>(n), std::vector<int>(static_cast<std::size_t>(n))};
  for (int a = 0; a < x.size; ++a)
    for (int b = 0; b < y.size; ++b)
      f.table[static_cast<std::size_t>(a * y.size + b)] = b * x.size + a;
  return f;
}

FinFun bang(const FinSet& x) { return FinFun::constant(x.size, 1, 0); }

FinFun tuple_fun(std::span<const FinFun> fs) {
  if (fs.empty()) throw StructuralError("empty tupling");
  int dom = fs.front().dom;
  std::vector<int> sizes;
  for (const FinFun& f : fs) {
    if (f.dom != dom) throw StructuralError("tupling components disagree on domain");
    sizes.push_back(f.cod);
  }
  std::int64_t cod = checked_product(sizes);
  FinFun r{dom, static_cast<int>(cod), std::vector<int>(static_cast<std::size_t>(dom))};
  for (int v = 0; v < dom; ++v) {
    std::int64_t idx = 0;
    for (std::size_t j = 0; j < fs.size(); ++j) idx = idx * sizes[j] + fs[j](v);
    r.table[static_cast<std::size_t>(v)] = static_cast<int>(idx);
  }
  return r;
}

FinFun pair_fun(const FinFun& f, const FinFun& g) {
  std::int64_t dom = checked_product(std::array<int, 2>{f.dom, g.dom});
  std::int64_t cod = checked_product(std::array<int, 2>{f.cod, g.cod});
  FinFun r{static_cast<int>(dom), static_cast<int>(cod),
           std::vector<int>(static_cast<std::size_t>(dom))};
  for (int a = 0; a < f.dom; ++a)
    for (int b = 0; b < g.dom; ++b)
      r.table[static_cast<std::size_t>(a * g.dom + b)] = f(a) * g.cod + g(b);
  return r;
}

FinFun select_coords(int base_size, int in_arity, std::span<const int> coords) {
  ProductSet in = power(fin(base_size), in_arity);
  std::vector<int> out_sizes(coords.size(), base_size);
  std::int64_t cod = checked_product(out_sizes);
  FinFun r{in.set.size, static_cast<int>(cod), std::vector<int>(static_cast<std::size_t>(in.set.size))};
  for (int i = 0; i < in.set.size; ++i) {
    std::vector<int> tuple = in.tuple_of(i);
    std::int64_t idx = 0;
    for (int c : coords) {
      if (c < 0 || c >= in_arity) throw StructuralError("coordinate out of range");
      idx = idx * base_size + tuple[static_cast<std::size_t>(c)];
    }
    r.table[static_cast<std::size_t>(i)] = static_cast<int>(idx);
  }
  return r;
}

// ---------------------------------------------------------------------------

MapRange::MapRange(FinSet dom, FinSet cod, std::uint64_t budget)
    : dom_(std::move(dom)), cod_(std::move(cod)), budget_(budget) {
  count_ = 1;
  for (int i = 0; i < dom_.size; ++i) count_ *= cod_.size;
  if (dom_.size > 0 && cod_.size == 0) count_ = 0;
}

MapRange::iterator::iterator(const MapRange* owner, bool at_end) : owner_(owner), done_(at_end) {
  if (!done_) {
    if (owner_->count_ == 0) {
      done_ = true;
      return;
    }
    if (owner_->count_ > owner_->budget_) {
      std::ostringstream os;
      os << "map enumeration of size " << owner_->count_ << " exceeds budget " << owner_->budget_;
      throw BudgetError(os.str());
    }
    current_ = FinFun{owner_->dom_.size, owner_->cod_.size,
                      std::vector<int>(static_cast<std::size_t>(owner_->dom_.size), 0)};
  }
}

MapRange::iterator& MapRange::iterator::operator++() {
  // Odometer increment, last table slot fastest: lexicographic over tables.
  for (std::size_t j = current_.table.size(); j-- > 0;) {
    if (++current_.table[j] < current_.cod) return *this;
    current_.table[j] = 0;
  }
  done_ = true;
  return *this;
}

MapRange::iterator MapRange::begin() const { return iterator(this, false); }
MapRange::iterator MapRange::end() const { return iterator(this, true); }

MapRange enumerate_maps(const FinSet& dom, const FinSet& cod, std::uint64_t budget) {
  return MapRange(dom, cod, budget);
}

// ---------------------------------------------------------------------------

bool SemiringTable::commutative_mul() const {
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      if (times(a, b) != times(b, a)) return false;
  return true;
}

SemiringTable SemiringTable::f2() {
  return SemiringTable{2, {0, 1, 1, 0}, {0, 0, 0, 1}, 0, 1};
}

SemiringTable SemiringTable::boolean() {
  return SemiringTable{2, {0, 1, 1, 1}, {0, 0, 0, 1}, 0, 1};
}

SemiringTable SemiringTable::trivial() { return SemiringTable{1, {0}, {0}, 0, 0}; }

MonoidTable MonoidTable::z2() { return MonoidTable{2, {0, 1, 1, 0}, 0, true}; }

MonoidTable MonoidTable::trivial() { return MonoidTable{1, {0}, 0, true}; }

namespace {

void check_table_shape(int size, const std::vector<int>& t, const char* what) {
  if (size <= 0) throw StructuralError("table size must be positive");
  if (t.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size))
    throw StructuralError(std::string(what) + " table has wrong length");
  for (int v : t)
    if (v < 0 || v >= size) throw StructuralError(std::string(what) + " table entry out of range");
}

}  // namespace

std::optional<TableViolation> validate_semiring(const SemiringTable& s) {
  check_table_shape(s.size, s.add, "add");
  check_table_shape(s.size, s.mul, "mul");
  if (s.zero < 0 || s.zero >= s.size || s.one < 0 || s.one >= s.size)
    throw StructuralError("distinguished element out of range");
  const int n = s.size;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (s.plus(s.plus(a, b), c) != s.plus(a, s.plus(b, c)))
          return TableViolation{"add-associativity", {a, b, c}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (s.plus(a, b) != s.plus(b, a)) return TableViolation{"add-commutativity", {a, b, -1}};
  for (int a = 0; a < n; ++a) {
    if (s.plus(s.zero, a) != a) return TableViolation{"zero-left-unit", {a, -1, -1}};
    if (s.plus(a, s.zero) != a) return TableViolation{"zero-right-unit", {a, -1, -1}};
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (s.times(s.times(a, b), c) != s.times(a, s.times(b, c)))
          return TableViolation{"mul-associativity", {a, b, c}};
  for (int a = 0; a < n; ++a) {
    if (s.times(s.one, a) != a) return TableViolation{"one-left-unit", {a, -1, -1}};
    if (s.times(a, s.one) != a) return TableViolation{"one-right-unit", {a, -1, -1}};
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (s.times(a, s.plus(b, c)) != s.plus(s.times(a, b), s.times(a, c)))
          return TableViolation{"left-distributivity", {a, b, c}};
        if (s.times(s.plus(a, b), c) != s.plus(s.times(a, c), s.times(b, c)))
          return TableViolation{"right-distributivity", {a, b, c}};
      }
  for (int a = 0; a < n; ++a) {
    if (s.times(s.zero, a) != s.zero) return TableViolation{"zero-left-absorbing", {a, -1, -1}};
    if (s.times(a, s.zero) != s.zero) return TableViolation{"zero-right-absorbing", {a, -1, -1}};
  }
  return std::nullopt;
}

std::optional<TableViolation> validate_monoid(const MonoidTable& m) {
  check_table_shape(m.size, m.op, "op");
  if (m.unit < 0 || m.unit >= m.size) throw StructuralError("unit index out of range");
  const int n = m.size;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m.times(m.times(a, b), c) != m.times(a, m.times(b, c)))
          return TableViolation{"associativity", {a, b, c}};
  for (int a = 0; a < n; ++a) {
    if (m.times(m.unit, a) != a) return TableViolation{"left-unit", {a, -1, -1}};
    if (m.times(a, m.unit) != a) return TableViolation{"right-unit", {a, -1, -1}};
  }
  if (m.commutative)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (m.times(a, b) != m.times(b, a))
          return TableViolation{"commutativity", {a, b, -1}};
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

using json = nlohmann::json;

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON", 1, 1);
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<int> int_vector(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw StructuralError(std::string("missing or non-array field: ") + key);
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) throw StructuralError(std::string("non-integer entry in ") + key);
    out.push_back(v.get<int>());
  }
  return out;
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw StructuralError(std::string("missing or non-integer field: ") + key);
  return j[key].get<int>();
}

}  // namespace

SemiringTable semiring_from_json_text(const std::string& text) {
  json j = parse_json_text(text);
  SemiringTable s;
  s.size = int_field(j, "size");
  s.add = int_vector(j, "add");
  s.mul = int_vector(j, "mul");
  s.zero = int_field(j, "zero");
  s.one = int_field(j, "one");
  if (auto v = validate_semiring(s)) {
    throw StructuralError("semiring axiom failed: " + v->axiom + " at (" +
                          std::to_string(v->witness[0]) + "," + std::to_string(v->witness[1]) +
                          "," + std::to_string(v->witness[2]) + ")");
  }
  return s;
}

MonoidTable monoid_from_json_text(const std::string& text) {
  json j = parse_json_text(text);
  MonoidTable m;
  m.size = int_field(j, "size");
  m.op = int_vector(j, "op");
  m.unit = int_field(j, "unit");
  if (j.contains("commutative")) {
    if (!j["commutative"].is_boolean()) throw StructuralError("commutative must be a boolean");
    m.commutative = j["commutative"].get<bool>();
  } else {
    check_table_shape(m.size, m.op, "op");
    m.commutative = true;
    for (int a = 0; a < m.size && m.commutative; ++a)
      for (int b = 0; b < m.size; ++b)
        if (m.times(a, b) != m.times(b, a)) {
          m.commutative = false;
          break;
        }
  }
  if (auto v = validate_monoid(m)) {
    throw StructuralError("monoid axiom failed: " + v->axiom + " at (" +
                          std::to_string(v->witness[0]) + "," + std::to_string(v->witness[1]) +
                          ")");
  }
  return m;
}

SemiringTable load_semiring(const std::string& path) {
  return semiring_from_json_text(slurp(path));
}

MonoidTable load_monoid(const std::string& path) { return monoid_from_json_text(slurp(path)); }

std::string semiring_to_json_text(const SemiringTable& s) {
  nlohmann::ordered_json j;
  j["size"] = s.size;
  j["add"] = s.add;
  j["mul"] = s.mul;
  j["zero"] = s.zero;
  j["one"] = s.one;
  return j.dump(2);
}

std::string monoid_to_json_text(const MonoidTable& m) {
  nlohmann::ordered_json j;
  j["size"] = m.size;
  j["op"] = m.op;
  j["unit"] = m.unit;
  j["commutative"] = m.commutative;
  return j.dump(2);
}

}  // namespace monpres
