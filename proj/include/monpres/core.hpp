#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monpres/common.hpp"

namespace monpres {

// A finite set {0, ..., size-1}. Labels are display-only; equality is by size,
// since elements are always canonical indices.
struct FinSet {
  int size = 0;
  std::vector<std::string> labels;

  bool operator==(const FinSet& o) const { return size == o.size; }
};

inline FinSet fin(int n) { return FinSet{n, {}}; }
inline FinSet terminal() { return FinSet{1, {}}; }

// Total function between finite sets, as a value table.
struct FinFun {
  int dom = 0;
  int cod = 0;
  std::vector<int> table;

  int operator()(int x) const { return table[static_cast<std::size_t>(x)]; }

  static FinFun identity(int n);
  static FinFun constant(int dom, int cod, int value);

  bool operator==(const FinFun&) const = default;
};

void validate(const FinFun& f);

// g after f; f.cod must equal g.dom.
FinFun compose(const FinFun& g, const FinFun& f);

// ---------------------------------------------------------------------------
// Products. Tuples are flattened row-major with the leftmost coordinate most
// significant, the same convention used by every enumeration in the library.

std::int64_t checked_product(std::span<const int> sizes);

struct ProductSet {
  std::vector<int> sizes;
  FinSet set;  // size = product of sizes

  std::int64_t index_of(std::span<const int> tuple) const;
  std::vector<int> tuple_of(std::int64_t index) const;
};

ProductSet product(std::span<const FinSet> factors);
ProductSet power(const FinSet& x, int n);

FinFun projection(const ProductSet& p, int j);
FinFun diagonal(const FinSet& x, int n);         // x -> (x,...,x) in X^n
FinFun swap_pair(const FinSet& x, const FinSet& y);  // X x Y -> Y x X
FinFun bang(const FinSet& x);                    // unique map X -> 1

// Pairing <fs...>: all fs share a domain; result maps into the product of codomains.
FinFun tuple_fun(std::span<const FinFun> fs);
// f x g on the product of domains.
FinFun pair_fun(const FinFun& f, const FinFun& g);

// Coordinate selection X^in_arity -> X^|coords|, coords 0-based positions.
FinFun select_coords(int base_size, int in_arity, std::span<const int> coords);

// ---------------------------------------------------------------------------
// Enumeration of all functions dom -> cod in lexicographic table order.
// The exact count is computed with big integers up front; iteration refuses to
// start when it exceeds the budget instead of wrapping.

class MapRange {
 public:
  MapRange(FinSet dom, FinSet cod, std::uint64_t budget);

  const BigInt& count() const { return count_; }

  class iterator {
   public:
    iterator() = default;
    iterator(const MapRange* owner, bool at_end);
    const FinFun& operator*() const { return current_; }
    iterator& operator++();
    bool operator!=(const iterator& o) const { return done_ != o.done_; }

   private:
    const MapRange* owner_ = nullptr;
    FinFun current_;
    bool done_ = true;
  };

  iterator begin() const;
  iterator end() const;

 private:
  FinSet dom_, cod_;
  BigInt count_;
  std::uint64_t budget_;
};

constexpr std::uint64_t kDefaultEnumBudget = 1u << 22;

MapRange enumerate_maps(const FinSet& dom, const FinSet& cod,
                        std::uint64_t budget = kDefaultEnumBudget);

// ---------------------------------------------------------------------------
// Semiring and commutative-monoid tables with exhaustive axiom validation.

// First violated axiom with the witness elements that break it (-1 for unused slots).
struct TableViolation {
  std::string axiom;
  std::array<int, 3> witness{-1, -1, -1};
};

struct SemiringTable {
  int size = 0;
  std::vector<int> add;  // row-major size x size
  std::vector<int> mul;
  int zero = 0;
  int one = 0;

  int plus(int a, int b) const { return add[static_cast<std::size_t>(a * size + b)]; }
  int times(int a, int b) const { return mul[static_cast<std::size_t>(a * size + b)]; }
  bool commutative_mul() const;

  static SemiringTable f2();
  static SemiringTable boolean();
  static SemiringTable trivial();
};

struct MonoidTable {
  int size = 0;
  std::vector<int> op;  // row-major
  int unit = 0;
  bool commutative = false;

  int times(int a, int b) const { return op[static_cast<std::size_t>(a * size + b)]; }

  static MonoidTable z2();
  static MonoidTable trivial();
};

// nullopt means all axioms hold. Otherwise the first failure in a fixed check
// order, so results are reproducible.
std::optional<TableViolation> validate_semiring(const SemiringTable& s);
std::optional<TableViolation> validate_monoid(const MonoidTable& m);

// JSON loaders; they validate and throw StructuralError/ParseError on bad input.
SemiringTable load_semiring(const std::string& path);
MonoidTable load_monoid(const std::string& path);
SemiringTable semiring_from_json_text(const std::string& text);
MonoidTable monoid_from_json_text(const std::string& text);

std::string semiring_to_json_text(const SemiringTable& s);
std::string monoid_to_json_text(const MonoidTable& m);

}  // namespace monpres
