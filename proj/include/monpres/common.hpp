#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace monpres {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Malformed input data: bad table shapes, mismatched carriers, contract breaches.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation requested from a monad tier that does not support it.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search or enumeration refused to start because its exact size exceeds the budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Deterministic generator. std::uniform_int_distribution is implementation-defined,
// so bounded draws go through a fixed reduction to keep output identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform-ish value in [0, bound); bound > 0. The modulo bias is irrelevant for
  // the tiny bounds used here and determinism matters more.
  std::uint64_t below(std::uint64_t bound) { return eng_() % bound; }

  int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

 private:
  std::mt19937_64 eng_;
};

// Stable derivation of per-work-item seeds, so parallel schedules cannot change
// which random draws a given item sees.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace monpres
