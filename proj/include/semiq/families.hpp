#pragma once

// Closed forms for the Frobenius number and genus of <A>/p, p | a, for five
// structured generator families. Every hypothesis is validated up front and a
// failing one is reported by name; outside their hypotheses the formulas are
// wrong, so there is no fallback.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semiq/quotient.hpp"
#include "semiq/semigroup.hpp"

namespace semiq {

/// (a, d b_1, ..., d b_k)
struct ScaledParams {
  Int a = 0;
  Int d = 0;
  std::vector<Int> B;
};

/// (a, ha + d, ha + 2d, ..., ha + kd)
struct AapParams {
  Int a = 0, h = 0, d = 0, k = 0;
};

/// (a, ha + (K+1)d, ..., ha + kd)
struct GapAapParams {
  Int a = 0, h = 0, d = 0, K = 0, k = 0;
};

/// (a, ha - d, ha + d)
struct PlusMinusParams {
  Int a = 0, h = 0, d = 0;
};

/// (a, ha + d, ha + 3d, ..., ha + (2k+1)d)
struct OddAapParams {
  Int a = 0, h = 0, d = 0, k = 0;
};

using FamilyParams =
    std::variant<ScaledParams, AapParams, GapAapParams, PlusMinusParams, OddAapParams>;

struct FamilySpec {
  FamilyParams params;
  Int p = 1;
};

/// Frobenius number plus genus; genus is absent only for the odd-term family.
struct FamilyResult {
  Int frobenius = -1;
  std::optional<Int> genus;

  friend bool operator==(const FamilyResult&, const FamilyResult&) = default;
};

std::string_view variant_name(const FamilyParams& params);

/// "scaled", "aap", "gap-aap", "plus-minus", "odd-aap".
std::optional<FamilyParams> family_from_name(std::string_view name);

/// Generator values in the family's own order (a first). No validation.
std::vector<Int> family_generators(const FamilyParams& params);

/// Checks every hypothesis of the family's closed form; throws
/// ConstraintViolation naming the first failing clause (TPrimeOdd for the
/// odd-term parity gate).
void validate(const FamilySpec& spec);

/// d F(<a,B>/p) + a(d-1)/p and d g(<a,B>/p) + (a-p)(d-1)/(2p).
InvariantPair scaled_quotient(Int a, Int d, const std::vector<Int>& B, Int p,
                              const InvariantPair& baseline);

/// Same, with the baseline <a,B>/p computed by the generic quotient path.
InvariantPair scaled_quotient(Int a, Int d, const std::vector<Int>& B, Int p);

InvariantPair aap_quotient(Int a, Int h, Int d, Int k, Int p);

InvariantPair gap_aap_quotient(Int a, Int h, Int d, Int K, Int k, Int p);

InvariantPair plus_minus_quotient(Int a, Int h, Int d, Int p);

Int odd_aap_quotient_frobenius(Int a, Int h, Int d, Int k, Int p);

/// The family written as (a, ha + d B) for the min-coins reduction: B is
/// (1..k), (K+1..k), (1, 3, ..., 2k+1) or the scaled list with h = 0. The
/// plus-minus family has no such form with positive d and goes through
/// StructuredFamily::decompose.
StructuredFamily structured_form(const FamilyParams& params);

/// Dispatches on the variant.
FamilyResult evaluate(const FamilySpec& spec);

}  // namespace semiq
