#pragma once

// Numerical semigroups given by generators: validated generator lists,
// Apéry tables, and the Frobenius number / genus read off a table.

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "semiq/arith.hpp"

namespace semiq {

/// Sorted, deduplicated, positive generators with gcd 1. Redundant
/// generators are kept as given.
class GeneratorList {
 public:
  /// Canonicalizes `raw`; throws EmptyInput, NonPositiveEntry or GcdNotOne.
  static GeneratorList validate(std::span<const Int> raw);

  std::span<const Int> gens() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  Int smallest() const noexcept { return gens_.front(); }
  Int largest() const noexcept { return gens_.back(); }
  bool contains_generator(Int g) const noexcept;

  friend bool operator==(const GeneratorList&, const GeneratorList&) = default;

 private:
  explicit GeneratorList(std::vector<Int> gens) : gens_(std::move(gens)) {}
  std::vector<Int> gens_;
};

inline GeneratorList validate_generators(std::span<const Int> raw) {
  return GeneratorList::validate(raw);
}

/// Frobenius number and genus. F = -1 exactly when g = 0 (the semigroup is N).
struct InvariantPair {
  Int frobenius = -1;
  Int genus = 0;

  friend bool operator==(const InvariantPair&, const InvariantPair&) = default;
};

/// For each residue r mod `modulus`, the least element of the semigroup
/// congruent to r. Construction checks the shape invariants (length, N_0 = 0,
/// N_r = r mod modulus, non-negative); membership-side invariants are checked
/// by the tests against the sieve oracle.
class AperyTable {
 public:
  AperyTable(Int modulus, std::vector<Int> entries);

  Int modulus() const noexcept { return modulus_; }
  std::span<const Int> entries() const noexcept { return entries_; }
  Int operator[](std::size_t r) const noexcept { return entries_[r]; }

  /// x is in the semigroup iff x >= 0 and x >= N_{x mod modulus}.
  bool contains(Int x) const noexcept {
    return x >= 0 && x >= entries_[static_cast<std::size_t>(x % modulus_)];
  }

  friend bool operator==(const AperyTable&, const AperyTable&) = default;

 private:
  Int modulus_;
  std::vector<Int> entries_;
};

/// Apéry table of <A> with respect to the generator `a` (NotAGenerator
/// otherwise). Round-robin residue relaxation: each generator walks the
/// cycles it induces on Z/a starting from the cycle minimum; passes repeat
/// until one makes no improvement.
AperyTable apery_set(const GeneratorList& A, Int a);

/// Table with respect to the smallest generator.
inline AperyTable apery_set(const GeneratorList& A) { return apery_set(A, A.smallest()); }

bool is_member(const GeneratorList& A, Int x);

Int frobenius_from_apery(const AperyTable& t);

/// (1/a) * sum N_r - (a - 1)/2, evaluated exactly.
Int genus_from_apery(const AperyTable& t);

inline InvariantPair invariants_from_apery(const AperyTable& t) {
  return {frobenius_from_apery(t), genus_from_apery(t)};
}

inline InvariantPair invariants(const GeneratorList& A) { return invariants_from_apery(apery_set(A)); }

/// Two-generator closed form: (a1 a2 - a1 - a2, (a1 - 1)(a2 - 1)/2).
InvariantPair sylvester_two(Int a1, Int a2);

}  // namespace semiq
