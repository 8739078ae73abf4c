#include "semiq/families.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "semiq/quotient.hpp"

namespace semiq {

namespace {

template <typename... Named>
std::string echo(std::string_view family, Int p, Named... named) {
  std::ostringstream os;
  os << family << " (";
  ((os << named.first << '=' << named.second << ", "), ...);
  os << "p=" << p << ')';
  return os.str();
}

using Named = std::pair<const char*, Int>;

void require(bool ok, const std::string& who, std::string_view clause) {
  if (!ok) {
    throw Error(ErrorKind::ConstraintViolation,
                "hypothesis " + std::string(clause) + " fails for " + who);
  }
}

void require_gcd_one(const FamilyParams& params, const std::string& who) {
  require(arith::gcd_of(family_generators(params)) == 1, who, "gcd(A) = 1");
}

void check(const ScaledParams& f, Int p) {
  const std::string who = echo("scaled", p, Named{"a", f.a}, Named{"d", f.d});
  require(f.a >= 1 && f.d >= 1 && p >= 1, who, "a, d, p positive");
  require(!f.B.empty(), who, "B non-empty");
  for (Int b : f.B) require(b >= 1, who, "B positive");
  require(f.a % p == 0, who, "p | a");
  require_gcd_one(f, who);
}

void check(const AapParams& f, Int p) {
  const std::string who = echo("aap", p, Named{"a", f.a}, Named{"h", f.h}, Named{"d", f.d},
                               Named{"k", f.k});
  require(f.a >= 1 && f.d >= 1 && p >= 1, who, "a, d, p positive");
  require(f.h >= 0, who, "h non-negative");
  require(1 <= f.k && f.k <= f.a - 1, who, "1 <= k <= a-1");
  require(f.a % p == 0, who, "p | a");
  require_gcd_one(f, who);
}

void check(const GapAapParams& f, Int p) {
  const std::string who = echo("gap-aap", p, Named{"a", f.a}, Named{"h", f.h}, Named{"d", f.d},
                               Named{"K", f.K}, Named{"k", f.k});
  require(f.h >= 1 && f.d >= 1 && f.K >= 1 && f.k >= 1 && p >= 1, who, "h, d, K, k, p positive");
  require(f.a >= 2, who, "a >= 2");
  require(2 * f.K <= f.k - 1, who, "K <= (k-1)/2");
  // Without this the p <= K branch reads residues floor(K/p) >= a/p that do not exist.
  require(f.K < f.a, who, "K < a");
  require(f.a % p == 0, who, "p | a");
  require_gcd_one(f, who);
}

void check(const PlusMinusParams& f, Int p) {
  const std::string who = echo("plus-minus", p, Named{"a", f.a}, Named{"h", f.h}, Named{"d", f.d});
  require(f.a >= 1 && f.h >= 1 && f.d >= 1 && p >= 1, who, "a, h, d, p positive");
  require(std::gcd(f.a, f.d) == 1, who, "gcd(a, d) = 1");
  require(arith::sub(arith::mul(f.h, f.a), f.d) > 1, who, "ha - d > 1");
  require(f.a % p == 0, who, "p | a");
  require_gcd_one(f, who);
}

Int odd_t_prime(Int a, Int k, Int p) {
  // a - p = (2k+1) s' + t' with 1 <= t' <= 2k+1
  return arith::mod(a - p - 1, 2 * k + 1) + 1;
}

void check(const OddAapParams& f, Int p) {
  const std::string who = echo("odd-aap", p, Named{"a", f.a}, Named{"h", f.h}, Named{"d", f.d},
                               Named{"k", f.k});
  require(f.h >= 1 && f.d >= 1 && f.k >= 1 && p >= 1, who, "h, d, k, p positive");
  require(f.a > 2, who, "a > 2");
  require(3 <= 2 * f.k + 1 && 2 * f.k + 1 <= f.a - 1, who, "3 <= 2k+1 <= a-1");
  require(f.a % p == 0, who, "p | a");
  require_gcd_one(f, who);
  const Int t_prime = odd_t_prime(f.a, f.k, p);
  if (t_prime % 2 != 0) {
    throw Error(ErrorKind::TPrimeOdd,
                "t' = " + std::to_string(t_prime) + " is odd for " + who +
                    "; no closed form, use the generic quotient computation",
                t_prime);
  }
}

/// sum_{r=lo}^{hi} ceil((offset + r p) / k)
Int ceil_sum(Int lo, Int hi, Int offset, Int p, Int k) {
  Int total = 0;
  for (Int r = lo; r <= hi; ++r) {
    total = arith::add(total, arith::ceil_div(arith::add(offset, arith::mul(r, p)), k));
  }
  return total;
}

/// (a - p)(d - 1) / (2p), the genus shift shared by the progression families.
Int scaling_genus_shift(Int a, Int d, Int p) {
  return arith::exact_div(arith::mul(a - p, d - 1), arith::mul(2, p), "genus shift (a-p)(d-1)/2p");
}

}  // namespace

std::string_view variant_name(const FamilyParams& params) {
  struct Visitor {
    std::string_view operator()(const ScaledParams&) const { return "scaled"; }
    std::string_view operator()(const AapParams&) const { return "aap"; }
    std::string_view operator()(const GapAapParams&) const { return "gap-aap"; }
    std::string_view operator()(const PlusMinusParams&) const { return "plus-minus"; }
    std::string_view operator()(const OddAapParams&) const { return "odd-aap"; }
  };
  return std::visit(Visitor{}, params);
}

std::optional<FamilyParams> family_from_name(std::string_view name) {
  if (name == "scaled") return ScaledParams{};
  if (name == "aap") return AapParams{};
  if (name == "gap-aap") return GapAapParams{};
  if (name == "plus-minus") return PlusMinusParams{};
  if (name == "odd-aap") return OddAapParams{};
  return std::nullopt;
}

std::vector<Int> family_generators(const FamilyParams& params) {
  struct Visitor {
    std::vector<Int> operator()(const ScaledParams& f) const {
      std::vector<Int> out{f.a};
      for (Int b : f.B) out.push_back(arith::mul(f.d, b));
      return out;
    }
    std::vector<Int> operator()(const AapParams& f) const {
      std::vector<Int> out{f.a};
      for (Int i = 1; i <= f.k; ++i) out.push_back(arith::add(arith::mul(f.h, f.a), arith::mul(i, f.d)));
      return out;
    }
    std::vector<Int> operator()(const GapAapParams& f) const {
      std::vector<Int> out{f.a};
      for (Int i = f.K + 1; i <= f.k; ++i) {
        out.push_back(arith::add(arith::mul(f.h, f.a), arith::mul(i, f.d)));
      }
      return out;
    }
    std::vector<Int> operator()(const PlusMinusParams& f) const {
      const Int ha = arith::mul(f.h, f.a);
      return {f.a, arith::sub(ha, f.d), arith::add(ha, f.d)};
    }
    std::vector<Int> operator()(const OddAapParams& f) const {
      std::vector<Int> out{f.a};
      for (Int i = 0; i <= f.k; ++i) {
        out.push_back(arith::add(arith::mul(f.h, f.a), arith::mul(2 * i + 1, f.d)));
      }
      return out;
    }
  };
  return std::visit(Visitor{}, params);
}

void validate(const FamilySpec& spec) {
  std::visit([&](const auto& f) { check(f, spec.p); }, spec.params);
}

InvariantPair scaled_quotient(Int a, Int d, const std::vector<Int>& B, Int p,
                              const InvariantPair& baseline) {
  check(ScaledParams{a, d, B}, p);
  const Int f = arith::add(arith::mul(d, baseline.frobenius),
                           arith::exact_div(arith::mul(a, d - 1), p, "a(d-1)/p"));
  const Int g = arith::add(arith::mul(d, baseline.genus), scaling_genus_shift(a, d, p));
  return {f, g};
}

InvariantPair scaled_quotient(Int a, Int d, const std::vector<Int>& B, Int p) {
  check(ScaledParams{a, d, B}, p);
  std::vector<Int> unscaled{a};
  unscaled.insert(unscaled.end(), B.begin(), B.end());
  const QuotientSpec base(GeneratorList::validate(unscaled), p, a);
  return scaled_quotient(a, d, B, p, quotient_invariants(base));
}

InvariantPair aap_quotient(Int a, Int h, Int d, Int k, Int p) {
  check(AapParams{a, h, d, k}, p);
  if (h == 0) {
    std::vector<Int> B(static_cast<std::size_t>(k));
    std::iota(B.begin(), B.end(), Int{1});
    return scaled_quotient(a, d, B, p);
  }
  const Int q = a / p;
  const Int ha_p = arith::mul(h, q);
  const Int f = arith::sub(
      arith::add(arith::mul(arith::ceil_div(a - p, k), ha_p), arith::mul(q, d - 1)), d);
  const Int g = arith::add(arith::mul(h, ceil_sum(1, q - 1, 0, p, k)), scaling_genus_shift(a, d, p));
  return {f, g};
}

InvariantPair gap_aap_quotient(Int a, Int h, Int d, Int K, Int k, Int p) {
  check(GapAapParams{a, h, d, K, k}, p);
  const Int q = a / p;
  const Int ha_p = arith::mul(h, q);
  const Int shift = scaling_genus_shift(a, d, p);
  if (p > K) {
    const Int f = arith::sub(
        arith::add(arith::mul(arith::ceil_div(a - p, k), ha_p), arith::mul(q, d - 1)), d);
    const Int g = arith::add(arith::mul(h, ceil_sum(1, q - 1, 0, p, k)), shift);
    return {f, g};
  }
  const Int c = K / p;
  const Int f = arith::add(
      arith::add(arith::mul(arith::ceil_div(arith::add(a, arith::mul(c, p)), k), ha_p),
                 arith::mul(q, d - 1)),
      arith::mul(c, d));
  const Int sums = arith::add(ceil_sum(1, c, a, p, k), ceil_sum(c + 1, q - 1, 0, p, k));
  const Int g = arith::add(arith::add(arith::mul(h, sums), shift), arith::mul(c, d));
  return {f, g};
}

InvariantPair plus_minus_quotient(Int a, Int h, Int d, Int p) {
  check(PlusMinusParams{a, h, d}, p);
  const Int q = a / p;
  const Int ha = arith::mul(h, a);
  const Int lower = ha - d;  // ha - d
  const Int upper = arith::add(ha, d);
  const Int two_hp = arith::mul(2, h, p);
  const Int s = arith::floor_div(lower, two_hp);
  const Int s_ceil = arith::ceil_div(lower, two_hp);
  if (s < 0 || s >= q) {
    throw Error(ErrorKind::InternalBound,
                "plus-minus split s = " + std::to_string(s) + " outside [0, a/p)");
  }
  const Int f = std::max(arith::sub(arith::mul(s, upper), q),
                         arith::sub(arith::mul(q - s_ceil, lower), q));

  // g = [ (ha+d) p^2 s(s+1) + (ha-d)(a-sp)(a-sp-p) - a(a-p) ] / (2pa)
  const Int a_sp = arith::sub(a, arith::mul(s, p));
  const Int numerator = arith::sub(
      arith::add(arith::mul(upper, p, p, s, s + 1), arith::mul(lower, a_sp, a_sp - p)),
      arith::mul(a, a - p));
  const Int g = arith::exact_div(numerator, arith::mul(2, p, a), "plus-minus genus");
  return {f, g};
}

Int odd_aap_quotient_frobenius(Int a, Int h, Int d, Int k, Int p) {
  check(OddAapParams{a, h, d, k}, p);
  // (ha (floor((a-p-1)/(2k+1)) + 2) + (a-p) d - a) / p
  const Int blocks = arith::floor_div(a - p - 1, 2 * k + 1) + 2;
  const Int numerator =
      arith::sub(arith::add(arith::mul(h, a, blocks), arith::mul(a - p, d)), a);
  return arith::exact_div(numerator, p, "odd-term Frobenius");
}

FamilyResult evaluate(const FamilySpec& spec) {
  struct Visitor {
    Int p;
    FamilyResult from(const InvariantPair& pair) const { return {pair.frobenius, pair.genus}; }
    FamilyResult operator()(const ScaledParams& f) const { return from(scaled_quotient(f.a, f.d, f.B, p)); }
    FamilyResult operator()(const AapParams& f) const { return from(aap_quotient(f.a, f.h, f.d, f.k, p)); }
    FamilyResult operator()(const GapAapParams& f) const {
      return from(gap_aap_quotient(f.a, f.h, f.d, f.K, f.k, p));
    }
    FamilyResult operator()(const PlusMinusParams& f) const {
      return from(plus_minus_quotient(f.a, f.h, f.d, p));
    }
    FamilyResult operator()(const OddAapParams& f) const {
      return {odd_aap_quotient_frobenius(f.a, f.h, f.d, f.k, p), std::nullopt};
    }
  };
  return std::visit(Visitor{spec.p}, spec.params);
}

}  // namespace semiq

namespace semiq {

StructuredFamily structured_form(const FamilyParams& params) {
  struct Visitor {
    StructuredFamily operator()(const ScaledParams& f) const {
      std::vector<Int> B = f.B;
      std::sort(B.begin(), B.end());
      B.erase(std::unique(B.begin(), B.end()), B.end());
      return StructuredFamily(f.a, 0, f.d, std::move(B));
    }
    StructuredFamily operator()(const AapParams& f) const {
      std::vector<Int> B(static_cast<std::size_t>(std::max<Int>(f.k, 0)));
      std::iota(B.begin(), B.end(), Int{1});
      return StructuredFamily(f.a, f.h, f.d, std::move(B));
    }
    StructuredFamily operator()(const GapAapParams& f) const {
      std::vector<Int> B;
      for (Int i = f.K + 1; i <= f.k; ++i) B.push_back(i);
      return StructuredFamily(f.a, f.h, f.d, std::move(B));
    }
    StructuredFamily operator()(const PlusMinusParams& f) const {
      return StructuredFamily::decompose(GeneratorList::validate(family_generators(f)), f.a);
    }
    StructuredFamily operator()(const OddAapParams& f) const {
      std::vector<Int> B;
      for (Int i = 0; i <= f.k; ++i) B.push_back(2 * i + 1);
      return StructuredFamily(f.a, f.h, f.d, std::move(B));
    }
  };
  return std::visit(Visitor{}, params);
}

}  // namespace semiq
