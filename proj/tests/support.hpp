#pragma once

// Hand-rolled random generators for the property tests. Seeds are fixed so a
// failure reproduces; every generator returns inputs that pass validation.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "semiq/error.hpp"
#include "semiq/families.hpp"
#include "semiq/semigroup.hpp"

namespace semiq::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  Int between(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(engine_); }
  bool coin() { return between(0, 1) == 1; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(between(0, static_cast<Int>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<Int> divisors(Int n) {
  std::vector<Int> out;
  for (Int x = 1; x <= n; ++x) {
    if (n % x == 0) out.push_back(x);
  }
  return out;
}

/// 1..max_count distinct values in [lo, hi] with gcd 1 (retries until it holds).
inline std::vector<Int> random_generators(Rng& rng, Int lo, Int hi, Int max_count) {
  for (;;) {
    const Int count = rng.between(1, max_count);
    std::set<Int> s;
    while (static_cast<Int>(s.size()) < count) s.insert(rng.between(lo, hi));
    std::vector<Int> v(s.begin(), s.end());
    if (arith::gcd_of(v) == 1) return v;
  }
}

/// Same, but in random order, so the first entry is not always the smallest.
inline std::vector<Int> shuffled_generators(Rng& rng, Int lo, Int hi, Int max_count) {
  auto v = random_generators(rng, lo, hi, max_count);
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[static_cast<std::size_t>(rng.between(0, static_cast<Int>(i) - 1))]);
  }
  return v;
}

/// The kind of the Error `f` throws, or nullopt when it returns normally.
template <typename F>
std::optional<ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline bool passes(const FamilySpec& spec) {
  try {
    validate(spec);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace semiq::testing
