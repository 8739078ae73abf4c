#include "semiq/quotient.hpp"

#include <algorithm>
#include <string>

namespace semiq {

namespace {

void require_divides(Int p, Int a) {
  if (p < 1 || a % p != 0) {
    throw Error(ErrorKind::DivisorMismatch,
                "p = " + std::to_string(p) + " does not divide " + std::to_string(a), p);
  }
}

}  // namespace

QuotientSpec::QuotientSpec(GeneratorList base, Int p, std::optional<Int> anchor)
    : base_(std::move(base)), p_(p), anchor_(anchor.value_or(base_.smallest())) {
  if (p_ < 1) throw Error(ErrorKind::NonPositiveEntry, "p must be positive", p_);
  if (!base_.contains_generator(anchor_)) {
    throw Error(ErrorKind::NotAGenerator,
                "anchor " + std::to_string(anchor_) + " is not a generator", anchor_);
  }
}

bool quotient_member(const QuotientSpec& q, Int x) {
  if (x < 0) return false;
  return is_member(q.base(), arith::mul(q.p(), x));
}

AperyTable quotient_apery(const QuotientSpec& q) {
  require_divides(q.p(), q.anchor());
  const Int p = q.p();
  const Int modulus = q.anchor() / p;
  const AperyTable base_table = apery_set(q.base(), q.anchor());
  const auto member = [&](Int x) { return base_table.contains(arith::mul(p, x)); };

  // Every x with p x > F(A) is a member, so no residue needs more steps than this.
  const Int frobenius = frobenius_from_apery(base_table);
  const Int cap = (frobenius + q.anchor()) / p + modulus + 1;

  std::vector<Int> entries(static_cast<std::size_t>(modulus));
  for (Int r = 0; r < modulus; ++r) {
    Int x = r;
    for (Int steps = 0; !member(x); ++steps) {
      if (steps > cap) {
        throw Error(ErrorKind::InternalBound,
                    "quotient Apéry scan exceeded its cap in residue " + std::to_string(r));
      }
      x = arith::add(x, modulus);
    }
    entries[static_cast<std::size_t>(r)] = x;
  }
  return AperyTable(modulus, std::move(entries));
}

InvariantPair quotient_invariants(const QuotientSpec& q) {
  return invariants_from_apery(quotient_apery(q));
}

InvariantPair two_gen_quotient(Int a1, Int a2, Int p) {
  if (a1 < 1 || a2 < 1) {
    throw Error(ErrorKind::NonPositiveEntry, "two-generator quotient needs positive generators",
                std::min(a1, a2));
  }
  const Int g = std::gcd(a1, a2);
  if (g != 1) {
    throw Error(ErrorKind::NotCoprime,
                std::to_string(a1) + " and " + std::to_string(a2) + " share the factor " +
                    std::to_string(g),
                g);
  }
  require_divides(p, a1);
  const Int f = arith::sub(arith::sub(arith::mul(a1 / p, a2), a1 / p), a2);
  const Int genus = arith::exact_div(arith::mul(a1 - p, a2 - 1), arith::mul(2, p),
                                     "two-generator quotient genus");
  return {f, genus};
}

// ---------------------------------------------------------------------------

OBTable::OBTable(std::span<const Int> coins) : coins_(coins.begin(), coins.end()), values_{0} {
  if (coins_.empty()) throw Error(ErrorKind::EmptyInput, "coin list is empty");
  for (Int b : coins_) {
    if (b < 1) throw Error(ErrorKind::NonPositiveEntry, "coins must be positive", b);
  }
  std::sort(coins_.begin(), coins_.end());
  coins_.erase(std::unique(coins_.begin(), coins_.end()), coins_.end());
}

void OBTable::grow(Int M) {
  if (M <= limit()) return;
  Int x = static_cast<Int>(values_.size());
  values_.resize(static_cast<std::size_t>(M) + 1, kInfeasible);
  for (; x <= M; ++x) {
    Int best = kInfeasible;
    for (Int b : coins_) {
      if (b > x) break;
      const Int prev = values_[static_cast<std::size_t>(x - b)];
      if (prev != kInfeasible && (best == kInfeasible || prev + 1 < best)) best = prev + 1;
    }
    values_[static_cast<std::size_t>(x)] = best;
  }
}

std::optional<Int> OBTable::value(Int M) {
  if (M < 0) {
    throw Error(ErrorKind::ConstraintViolation, "O_B(M) needs M >= 0, got " + std::to_string(M));
  }
  grow(M);
  const Int v = values_[static_cast<std::size_t>(M)];
  if (v == kInfeasible) return std::nullopt;
  return v;
}

std::optional<std::vector<Int>> OBTable::witness(Int M) {
  if (!value(M)) return std::nullopt;
  std::vector<Int> counts(coins_.size(), 0);
  Int rest = M;
  while (rest > 0) {
    const Int target = values_[static_cast<std::size_t>(rest)] - 1;
    for (std::size_t i = coins_.size(); i-- > 0;) {
      const Int b = coins_[i];
      if (b <= rest && values_[static_cast<std::size_t>(rest - b)] == target) {
        ++counts[i];
        rest -= b;
        break;
      }
    }
  }
  return counts;
}

std::optional<Int> ob_solve(std::span<const Int> B, Int M) {
  OBTable table(B);
  return table.value(M);
}

// ---------------------------------------------------------------------------

StructuredFamily::StructuredFamily(Int a, Int h, Int d, std::vector<Int> B)
    : a_(a), h_(h), d_(d), B_(std::move(B)) {
  if (a_ < 1) throw Error(ErrorKind::NonPositiveEntry, "a must be positive", a_);
  if (h_ < 0) throw Error(ErrorKind::ConstraintViolation, "h must be non-negative");
  if (d_ < 1) throw Error(ErrorKind::ConstraintViolation, "d must be positive");
  if (B_.empty()) throw Error(ErrorKind::EmptyInput, "B is empty");
  for (std::size_t i = 0; i < B_.size(); ++i) {
    if (B_[i] < 1) throw Error(ErrorKind::NonPositiveEntry, "entries of B must be positive", B_[i]);
    if (i > 0 && B_[i] <= B_[i - 1]) {
      throw Error(ErrorKind::ConstraintViolation, "B must be strictly increasing");
    }
  }
  if (arith::add(arith::mul(h_, a_), arith::mul(d_, B_.front())) < 2) {
    throw Error(ErrorKind::ConstraintViolation, "ha + d b_1 must be at least 2");
  }
  const auto gens = raw_generators();
  const Int g = arith::gcd_of(gens);
  if (g != 1) throw Error(ErrorKind::GcdNotOne, "gcd is " + std::to_string(g) + ", must be 1", g);
}

StructuredFamily StructuredFamily::decompose(const GeneratorList& A, Int anchor) {
  if (!A.contains_generator(anchor)) {
    throw Error(ErrorKind::NotAGenerator, std::to_string(anchor) + " is not a generator", anchor);
  }
  std::vector<Int> others;
  for (Int g : A.gens()) {
    if (g != anchor) others.push_back(g);
  }
  if (others.empty()) {
    throw Error(ErrorKind::ConstraintViolation,
                "a structured form needs at least one generator besides the anchor");
  }
  const Int h = (others.front() - 1) / anchor;
  const Int shift = arith::mul(h, anchor);
  Int d = 0;
  for (Int& c : others) {
    c -= shift;
    d = std::gcd(d, c);
  }
  for (Int& c : others) c /= d;
  return StructuredFamily(anchor, h, d, std::move(others));
}

std::vector<Int> StructuredFamily::raw_generators() const {
  std::vector<Int> out{a_};
  const Int base = arith::mul(h_, a_);
  for (Int b : B_) out.push_back(arith::add(base, arith::mul(d_, b)));
  return out;
}

Int n_drp(const StructuredFamily& fam, Int p, Int r, OBTable& table) {
  const Int a = fam.a();
  require_divides(p, a);
  const Int modulus = a / p;
  if (r < 0 || r >= modulus) {
    throw Error(ErrorKind::ConstraintViolation,
                "residue " + std::to_string(r) + " outside 0.." + std::to_string(modulus - 1));
  }
  if (!std::equal(table.coins().begin(), table.coins().end(), fam.B().begin(), fam.B().end())) {
    throw Error(ErrorKind::ConstraintViolation, "OBTable coins differ from the family's B");
  }

  const Int weight = arith::mul(fam.h(), modulus);  // h a / p
  const Int b_max = fam.B().back();
  // A feasible m exists below this (gcd(a, gcd B) = 1 plus the Schur bound on
  // B / gcd B); running past it without a candidate means a broken invariant.
  const Int b_gcd = arith::gcd_of(fam.B());
  const Int m_cap = arith::add(arith::mul(b_gcd, arith::add(arith::mul(b_max, b_max) / a, 2)), 1);

  std::optional<Int> best;
  for (Int m = 0;; ++m) {
    const Int M = arith::add(arith::mul(m, a), arith::mul(r, p));
    const Int linear = arith::mul(arith::add(arith::mul(m, modulus), r), fam.d());
    const Int lower = arith::add(arith::mul(arith::ceil_div(M, b_max), weight), linear);
    if (best && lower >= *best) break;
    if (!best && m > m_cap) {
      throw Error(ErrorKind::InternalBound,
                  "no representation found for residue " + std::to_string(r));
    }
    if (const auto parts = table.value(M)) {
      const Int candidate = arith::add(arith::mul(*parts, weight), linear);
      if (!best || candidate < *best) best = candidate;
    }
  }
  return *best;
}

Int n_drp(const StructuredFamily& fam, Int p, Int r) {
  OBTable table(fam.B());
  return n_drp(fam, p, r, table);
}

std::vector<Int> n_drp_values(const StructuredFamily& fam, Int p) {
  require_divides(p, fam.a());
  OBTable table(fam.B());
  const Int modulus = fam.a() / p;
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(modulus));
  for (Int r = 0; r < modulus; ++r) out.push_back(n_drp(fam, p, r, table));
  return out;
}

AperyTable n_drp_apery(const StructuredFamily& fam, Int p) {
  const auto values = n_drp_values(fam, p);
  const Int modulus = static_cast<Int>(values.size());
  std::vector<Int> entries(values.size());
  for (Int r = 0; r < modulus; ++r) {
    const Int cls = arith::mod(arith::mul(fam.d() % modulus, r), modulus);
    entries[static_cast<std::size_t>(cls)] = values[static_cast<std::size_t>(r)];
  }
  return AperyTable(modulus, std::move(entries));
}

}  // namespace semiq
