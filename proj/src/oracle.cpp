#include "semiq/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <string>

namespace semiq::oracle {

namespace {

using Word = std::uint64_t;

Word read_bits(const std::vector<Word>& w, Int pos, Int n) {
  const auto word = static_cast<std::size_t>(pos >> 6);
  const int bit = static_cast<int>(pos & 63);
  Word v = w[word] >> bit;
  if (bit != 0 && bit + n > 64) v |= w[word + 1] << (64 - bit);
  if (n < 64) v &= (Word{1} << n) - 1;
  return v;
}

/// bits[dst, dst+len) |= bits[src, src+len), with src + len <= dst.
void or_range(std::vector<Word>& w, Int dst, Int src, Int len) {
  while (len > 0) {
    const int dbit = static_cast<int>(dst & 63);
    const Int take = std::min<Int>(64 - dbit, len);
    w[static_cast<std::size_t>(dst >> 6)] |= read_bits(w, src, take) << dbit;
    dst += take;
    src += take;
    len -= take;
  }
}

Int count_ones(const std::vector<Word>& w, Int from, Int len) {
  Int total = 0;
  while (len > 0) {
    const Int take = std::min<Int>(64, len);
    total += std::popcount(read_bits(w, from, take));
    from += take;
    len -= take;
  }
  return total;
}

void fill_ones(std::vector<Word>& w, Int from, Int to_inclusive) {
  for (Int x = from; x <= to_inclusive; ++x) {
    if ((x & 63) == 0 && x + 63 <= to_inclusive) {
      w[static_cast<std::size_t>(x >> 6)] = ~Word{0};
      x += 63;
    } else {
      w[static_cast<std::size_t>(x >> 6)] |= Word{1} << (x & 63);
    }
  }
}

}  // namespace

bool SemigroupSieve::contains(Int x) const {
  if (x < 0) return false;
  if (x > bound_) {
    throw Error(ErrorKind::ConstraintViolation,
                "sieve queried at " + std::to_string(x) + " beyond its bound " +
                    std::to_string(bound_));
  }
  return (words_[static_cast<std::size_t>(x >> 6)] >> (x & 63)) & 1U;
}

Int SemigroupSieve::gap_count() const noexcept {
  return (bound_ + 1) - count_ones(words_, 0, bound_ + 1);
}

Int SemigroupSieve::largest_gap() const noexcept {
  for (Int x = bound_; x >= 0; --x) {
    if (!((words_[static_cast<std::size_t>(x >> 6)] >> (x & 63)) & 1U)) return x;
  }
  return -1;
}

Int auto_bound(const GeneratorList& A) {
  return arith::add(arith::mul(A.smallest() - 1, A.largest() - 1), A.largest());
}

SemigroupSieve build_sieve(const GeneratorList& A, std::optional<Int> bound, Int cap_bits) {
  const Int L = bound.value_or(auto_bound(A));
  if (L < A.largest()) {
    throw Error(ErrorKind::ConstraintViolation,
                "sieve bound " + std::to_string(L) + " is below the largest generator");
  }
  if (L >= cap_bits) {
    throw Error(ErrorKind::Overflow,
                "sieve bound " + std::to_string(L) + " exceeds the memory cap of " +
                    std::to_string(cap_bits) + " bits",
                L);
  }
  std::vector<Word> words(static_cast<std::size_t>(L / 64 + 1), 0);
  words[0] = 1;

  // Every generator is >= a_1, so the block [x0, x0 + a_1) depends only on
  // bits below x0 and can be filled by OR-ing shifted copies.
  const Int step = A.smallest();
  for (Int x0 = step; x0 <= L; x0 += step) {
    const Int len = std::min(step, L - x0 + 1);
    for (Int g : A.gens()) {
      const Int src = std::max<Int>(0, x0 - g);
      const Int dst = src + g;
      const Int n = x0 + len - dst;
      if (n > 0) or_range(words, dst, src, n);
    }
    // a_1 consecutive members: everything above is a member too.
    if (len == step && count_ones(words, x0, len) == len) {
      fill_ones(words, x0 + len, L);
      break;
    }
  }
  return SemigroupSieve(L, std::move(words));
}

InvariantPair brute_invariants(const GeneratorList& A, Int cap_bits) {
  const auto sieve = build_sieve(A, std::nullopt, cap_bits);
  return {sieve.largest_gap(), sieve.gap_count()};
}

InvariantPair brute_quotient_invariants(const GeneratorList& A, Int p, Int cap_bits) {
  if (p < 1) throw Error(ErrorKind::NonPositiveEntry, "p must be positive", p);
  const auto sieve = build_sieve(A, std::nullopt, cap_bits);
  InvariantPair out{-1, 0};
  const Int last = sieve.bound() / p;
  for (Int x = 0; x <= last; ++x) {
    if (!sieve.contains(x * p)) {
      out.frobenius = x;
      ++out.genus;
    }
  }
  return out;
}

std::optional<Int> brute_ob(std::span<const Int> B, Int M) {
  if (M < 0) {
    throw Error(ErrorKind::ConstraintViolation, "O_B(M) needs M >= 0, got " + std::to_string(M));
  }
  std::vector<Int> coins(B.begin(), B.end());
  for (Int b : coins) {
    if (b < 1) throw Error(ErrorKind::NonPositiveEntry, "coins must be positive", b);
  }
  std::sort(coins.rbegin(), coins.rend());
  coins.erase(std::unique(coins.begin(), coins.end()), coins.end());

  // suffix_gcd[i] = gcd(coins[i..]); a remainder it does not divide is dead.
  std::vector<Int> suffix_gcd(coins.size() + 1, 0);
  for (std::size_t i = coins.size(); i-- > 0;) suffix_gcd[i] = std::gcd(coins[i], suffix_gcd[i + 1]);

  std::optional<Int> best;
  std::function<void(std::size_t, Int, Int)> search = [&](std::size_t i, Int rest, Int used) {
    if (rest == 0) {
      if (!best || used < *best) best = used;
      return;
    }
    if (i == coins.size() || rest % suffix_gcd[i] != 0) return;
    // Remaining coins are all <= coins[i].
    if (best && used + arith::ceil_div(rest, coins[i]) >= *best) return;
    for (Int c = rest / coins[i]; c >= 0; --c) search(i + 1, rest - c * coins[i], used + c);
  };
  search(0, M, 0);
  return best;
}

}  // namespace semiq::oracle
