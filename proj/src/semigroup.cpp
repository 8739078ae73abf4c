#include "semiq/semigroup.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace semiq {

GeneratorList GeneratorList::validate(std::span<const Int> raw) {
  if (raw.empty()) throw Error(ErrorKind::EmptyInput, "generator list is empty");
  for (Int v : raw) {
    if (v < 1) {
      throw Error(ErrorKind::NonPositiveEntry,
                  "generators must be positive, got " + std::to_string(v), v);
    }
  }
  std::vector<Int> gens(raw.begin(), raw.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  const Int g = arith::gcd_of(gens);
  if (g != 1) {
    throw Error(ErrorKind::GcdNotOne, "gcd is " + std::to_string(g) + ", must be 1", g);
  }
  return GeneratorList(std::move(gens));
}

bool GeneratorList::contains_generator(Int g) const noexcept {
  return std::binary_search(gens_.begin(), gens_.end(), g);
}

AperyTable::AperyTable(Int modulus, std::vector<Int> entries)
    : modulus_(modulus), entries_(std::move(entries)) {
  if (modulus_ < 1) throw Error(ErrorKind::InvalidTable, "Apéry modulus must be positive");
  if (static_cast<Int>(entries_.size()) != modulus_) {
    throw Error(ErrorKind::InvalidTable, "Apéry table has " + std::to_string(entries_.size()) +
                                             " entries for modulus " + std::to_string(modulus_));
  }
  if (entries_[0] != 0) throw Error(ErrorKind::InvalidTable, "Apéry entry N_0 must be 0");
  for (std::size_t r = 0; r < entries_.size(); ++r) {
    if (entries_[r] < 0 || entries_[r] % modulus_ != static_cast<Int>(r)) {
      throw Error(ErrorKind::InvalidTable,
                  "Apéry entry N_" + std::to_string(r) + " = " + std::to_string(entries_[r]) +
                      " is not congruent to " + std::to_string(r));
    }
  }
}

AperyTable apery_set(const GeneratorList& A, Int a) {
  if (!A.contains_generator(a)) {
    throw Error(ErrorKind::NotAGenerator, std::to_string(a) + " is not a generator", a);
  }
  constexpr Int kUnreached = std::numeric_limits<Int>::max();
  std::vector<Int> n(static_cast<std::size_t>(a), kUnreached);
  n[0] = 0;

  bool improved = true;
  while (improved) {
    improved = false;
    for (Int g : A.gens()) {
      const Int step = g % a;
      if (step == 0) continue;
      const Int cycles = std::gcd(a, step);
      const Int length = a / cycles;
      for (Int start = 0; start < cycles; ++start) {
        Int pos = start;
        Int min_pos = start;
        for (Int i = 1; i < length; ++i) {
          pos = (pos + step) % a;
          if (n[pos] < n[min_pos]) min_pos = pos;
        }
        if (n[min_pos] == kUnreached) continue;
        pos = min_pos;
        for (Int i = 1; i < length; ++i) {
          const Int next = (pos + step) % a;
          const Int candidate = arith::add(n[pos], g);
          if (candidate < n[next]) {
            n[next] = candidate;
            improved = true;
          }
          pos = next;
        }
      }
    }
  }

  if (std::find(n.begin(), n.end(), kUnreached) != n.end()) {
    throw Error(ErrorKind::InternalBound, "Apéry relaxation left a residue class unreached");
  }
  return AperyTable(a, std::move(n));
}

bool is_member(const GeneratorList& A, Int x) {
  if (x < 0) return false;
  return apery_set(A).contains(x);
}

Int frobenius_from_apery(const AperyTable& t) {
  const auto entries = t.entries();
  return *std::max_element(entries.begin(), entries.end()) - t.modulus();
}

Int genus_from_apery(const AperyTable& t) {
  // g = (sum N_r - a(a-1)/2) / a
  Int total = 0;
  for (Int v : t.entries()) total = arith::add(total, v);
  const Int a = t.modulus();
  const Int offset = arith::mul(a, a - 1) / 2;
  return arith::exact_div(arith::sub(total, offset), a, "genus from Apéry table");
}

InvariantPair sylvester_two(Int a1, Int a2) {
  if (a1 < 1 || a2 < 1) {
    throw Error(ErrorKind::NonPositiveEntry, "two-generator formula needs positive inputs",
                std::min(a1, a2));
  }
  const Int g = std::gcd(a1, a2);
  if (g != 1) {
    throw Error(ErrorKind::NotCoprime,
                std::to_string(a1) + " and " + std::to_string(a2) + " share the factor " +
                    std::to_string(g),
                g);
  }
  const Int f = arith::sub(arith::sub(arith::mul(a1, a2), a1), a2);
  const Int genus = arith::exact_div(arith::mul(a1 - 1, a2 - 1), 2, "two-generator genus");
  return {f, genus};
}

}  // namespace semiq
