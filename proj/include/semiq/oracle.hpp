#pragma once

// Brute-force reference implementations. Nothing here calls the Apéry
// relaxation or the min-coins DP; membership comes from an explicit sieve and
// O_B from exhaustive search, so agreement with the production paths is
// meaningful.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "semiq/semigroup.hpp"

namespace semiq::oracle {

inline constexpr Int kDefaultSieveCapBits = 100'000'000;

/// Membership bitmap of <A> over 0..bound.
class SemigroupSieve {
 public:
  Int bound() const noexcept { return bound_; }

  /// Only defined on 0..bound(); negative x is never a member.
  bool contains(Int x) const;

  Int gap_count() const noexcept;
  /// Largest non-member in 0..bound, or -1.
  Int largest_gap() const noexcept;

 private:
  friend SemigroupSieve build_sieve(const GeneratorList&, std::optional<Int>, Int);
  SemigroupSieve(Int bound, std::vector<std::uint64_t> words)
      : bound_(bound), words_(std::move(words)) {}

  Int bound_;
  std::vector<std::uint64_t> words_;
};

/// (a_1 - 1)(a_n - 1) + a_n. Every gap lies below it: F(A) <= (a_1 - 1)(a_n - 1) - 1
/// is the classical Schur bound, independent of anything computed here.
Int auto_bound(const GeneratorList& A);

/// Throws Overflow when bound + 1 bits exceed `cap_bits`, and
/// ConstraintViolation when an explicit bound is below the largest generator.
SemigroupSieve build_sieve(const GeneratorList& A, std::optional<Int> bound = std::nullopt,
                           Int cap_bits = kDefaultSieveCapBits);

InvariantPair brute_invariants(const GeneratorList& A, Int cap_bits = kDefaultSieveCapBits);

/// F and g of <A>/p for any p >= 1, by consulting the sieve at p x.
InvariantPair brute_quotient_invariants(const GeneratorList& A, Int p,
                                        Int cap_bits = kDefaultSieveCapBits);

/// Minimum number of parts by bounded exhaustive recursion; nullopt when M has
/// no representation.
std::optional<Int> brute_ob(std::span<const Int> B, Int M);

}  // namespace semiq::oracle
