#pragma once

// Quotients <A>/p = { x in N : p x in <A> } and the min-coins reduction of
// their Apéry sets for generator lists of the form (a, ha + d b_1, ..., ha + d b_k).

#include <optional>
#include <span>
#include <vector>

#include "semiq/semigroup.hpp"

namespace semiq {

/// A base semigroup together with the divisor p. `anchor` is the generator
/// whose quotient anchor/p serves as the Apéry modulus; it defaults to the
/// smallest generator. Apéry-table operations require p | anchor.
class QuotientSpec {
 public:
  QuotientSpec(GeneratorList base, Int p, std::optional<Int> anchor = std::nullopt);

  const GeneratorList& base() const noexcept { return base_; }
  Int p() const noexcept { return p_; }
  Int anchor() const noexcept { return anchor_; }
  bool p_divides_anchor() const noexcept { return anchor_ % p_ == 0; }

 private:
  GeneratorList base_;
  Int p_;
  Int anchor_;
};

bool quotient_member(const QuotientSpec& q, Int x);

/// Entry r is min{ x = r mod anchor/p : p x in <A> }, found by an upward scan
/// per residue. Throws DivisorMismatch when p does not divide the anchor.
AperyTable quotient_apery(const QuotientSpec& q);

InvariantPair quotient_invariants(const QuotientSpec& q);

/// (a1 a2/p - a1/p - a2, (a1 - p)(a2 - 1)/(2p)); requires gcd(a1, a2) = 1 and p | a1.
InvariantPair two_gen_quotient(Int a1, Int a2, Int p);

/// Memoized unbounded min-coins values O_B(M) over 0..limit(). Grows on
/// demand, so an instance must stay confined to one computation (or be
/// externally synchronized); the free function `ob_solve` builds its own.
class OBTable {
 public:
  static constexpr Int kInfeasible = -1;

  /// Coins are sorted and deduplicated; throws EmptyInput / NonPositiveEntry.
  explicit OBTable(std::span<const Int> coins);

  std::span<const Int> coins() const noexcept { return coins_; }
  Int limit() const noexcept { return static_cast<Int>(values_.size()) - 1; }

  /// Memoized prefix; entries equal kInfeasible where no representation exists.
  std::span<const Int> values() const noexcept { return values_; }

  /// Minimum number of parts summing to M, or nullopt when infeasible.
  std::optional<Int> value(Int M);

  /// Multiplicity of each coin (in `coins()` order) in a minimal
  /// representation. Backtracks greedily, preferring the largest coin that
  /// keeps the count optimal.
  std::optional<std::vector<Int>> witness(Int M);

 private:
  void grow(Int M);

  std::vector<Int> coins_;
  std::vector<Int> values_;
};

std::optional<Int> ob_solve(std::span<const Int> B, Int M);

/// Generators (a, ha + d b_1, ..., ha + d b_k) with h >= 0, d >= 1 and
/// B strictly increasing.
class StructuredFamily {
 public:
  /// Throws ConstraintViolation / NonPositiveEntry / GcdNotOne.
  StructuredFamily(Int a, Int h, Int d, std::vector<Int> B);

  /// Writes an arbitrary generator set as (anchor, h anchor + d B) with the
  /// largest h that keeps every b_i positive and d the gcd of the offsets.
  static StructuredFamily decompose(const GeneratorList& A, Int anchor);

  Int a() const noexcept { return a_; }
  Int h() const noexcept { return h_; }
  Int d() const noexcept { return d_; }
  std::span<const Int> B() const noexcept { return B_; }

  /// The generator values a, ha + d b_i, in the order above (not sorted).
  std::vector<Int> raw_generators() const;
  GeneratorList generators() const { return GeneratorList::validate(raw_generators()); }

 private:
  Int a_;
  Int h_;
  Int d_;
  std::vector<Int> B_;
};

/// min over m >= 0 of O_B(m a + r p) * (h a/p) + (m a/p + r) d: the element of
/// the quotient's Apéry set (modulus a/p) lying in the residue class d r.
/// The scan over m stops once the lower bound ceil(M / max B) * (h a/p) +
/// (m a/p + r) d reaches the best value found, which is monotone in m.
Int n_drp(const StructuredFamily& fam, Int p, Int r, OBTable& table);
Int n_drp(const StructuredFamily& fam, Int p, Int r);

/// n_drp for r = 0..a/p - 1, sharing one OBTable.
std::vector<Int> n_drp_values(const StructuredFamily& fam, Int p);

/// n_drp values placed at their residue classes d r mod a/p.
AperyTable n_drp_apery(const StructuredFamily& fam, Int p);

}  // namespace semiq
