#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "monpres/core.hpp"

namespace monpres {

// ---------------------------------------------------------------------------
// Elements of T X for the built-in monads, tagged by shape. Every payload is
// stored in the canonical enumeration order: element 0 / leftmost coordinate
// most significant.

struct Subset {
  std::vector<bool> in;
  auto operator<=>(const Subset&) const = default;
};

// Coefficients are indices into the semiring the owning monad carries.
struct MultisetElem {
  std::vector<int> coeff;
  auto operator<=>(const MultisetElem&) const = default;
};

struct DistElem {
  std::vector<Rational> weight;  // exact, sums to 1
  bool operator==(const DistElem&) const = default;
};

// value in [0, n] over a base of size n; value == n encodes the added point.
struct MaybeElem {
  int value = 0;
  auto operator<=>(const MaybeElem&) const = default;
};

struct WriterElem {
  int mon = 0;  // monoid element index
  int value = 0;
  auto operator<=>(const WriterElem&) const = default;
};

struct ReaderElem {
  std::vector<int> table;  // one value per environment
  auto operator<=>(const ReaderElem&) const = default;
};

using TPayload = std::variant<Subset, MultisetElem, DistElem, MaybeElem, WriterElem, ReaderElem>;

struct TObject {
  int base = 0;  // size of the underlying set
  TPayload payload;

  bool operator==(const TObject&) const = default;
};

bool tobject_less(const TObject& a, const TObject& b);
std::string to_string(const TObject& u);

enum class Tier { Enumerable, Sampleable };

// ---------------------------------------------------------------------------
// A commutative monad on finite sets: unit, map, flatten and the monoidal
// strength psi. flatten takes an outer element over {0..k-1} together with the
// k inner elements it indexes; this one primitive expresses multiplication for
// enumerable carriers and explicit finite nestings alike.

class Monad {
 public:
  virtual ~Monad() = default;

  const std::string& name() const { return name_; }
  virtual Tier tier() const = 0;

  virtual BigInt carrier_count(const FinSet& x) const = 0;
  virtual TObject carrier_at(const FinSet& x, std::uint64_t i) const = 0;
  virtual std::uint64_t index_of(const TObject& u) const = 0;
  virtual TObject random_element(const FinSet& x, Rng& rng) const = 0;

  virtual TObject unit(const FinSet& x, int v) const = 0;
  virtual TObject map(const FinFun& f, const TObject& u) const = 0;
  virtual TObject flatten(const TObject& outer, std::span<const TObject> inner,
                          const FinSet& x) const = 0;
  virtual TObject psi(const TObject& u, const TObject& v, const FinSet& x,
                      const FinSet& y) const = 0;

  // |T 1|, defined for every tier (the sampleable instance knows its own).
  virtual BigInt t1_count() const;

 protected:
  explicit Monad(std::string name) : name_(std::move(name)) {}

  std::string name_;
};

using MonadPtr = std::shared_ptr<const Monad>;

MonadPtr powerset();
MonadPtr powerset_nonempty();
MonadPtr multiset(SemiringTable s);
MonadPtr dist(int max_denominator = 16);
MonadPtr maybe();
MonadPtr writer(MonoidTable m);
MonadPtr reader(int exponent);

// Accessors for instance parameters, null/0 when the monad is not of that kind.
const SemiringTable* multiset_semiring(const Monad& t);
const MonoidTable* writer_monoid(const Monad& t);
int reader_exponent(const Monad& t);
int dist_max_denominator(const Monad& t);

// CLI selector: powerset | powerset+ | maybe | dist | reader:<k> |
// writer:<monoid.json> | multiset:<semiring.json>
MonadPtr parse_monad(const std::string& selector);

// ---------------------------------------------------------------------------
// Derived structure maps.

// psi^0 = unit at the terminal object.
TObject psi0(const Monad& t);

// Left-nested n-ary strength; us[i] lives over xs[i], result over the flat
// row-major product. n = 0 gives psi0.
TObject psi_n(const Monad& t, std::span<const FinSet> xs, std::span<const TObject> us);

// chi = <T pi_1, T pi_2> : T(X x Y) -> TX x TY, and its n-ary version.
std::pair<TObject, TObject> chi(const Monad& t, const FinSet& x, const FinSet& y,
                                const TObject& w);
std::vector<TObject> chi_n(const Monad& t, std::span<const FinSet> xs, const TObject& w);

// ---------------------------------------------------------------------------
// Enumerable-carrier helpers. All of them refuse (BudgetError) when the space
// is larger than the budget, and raise CapabilityError on the sampleable tier.

std::uint64_t enumerable_size(const Monad& t, const FinSet& x,
                              std::uint64_t budget = kDefaultEnumBudget);
std::vector<TObject> enumerate_carrier(const Monad& t, const FinSet& x,
                                       std::uint64_t budget = kDefaultEnumBudget);

// Action on index spaces: T f : |TX| -> |TY| as a table.
FinFun map_fun(const Monad& t, const FinFun& f, const FinSet& x, const FinSet& y,
               std::uint64_t budget = kDefaultEnumBudget);
// unit as a table X -> |TX|.
FinFun unit_fun(const Monad& t, const FinSet& x, std::uint64_t budget = kDefaultEnumBudget);
// multiplication as a table |T(fin(|TX|))| -> |TX|.
FinFun mult_fun(const Monad& t, const FinSet& x, std::uint64_t budget = kDefaultEnumBudget);

std::string tobject_json(const TObject& u);

}  // namespace monpres
