#pragma once

// Overflow-checked 64-bit integer helpers. Every intermediate product in the
// library goes through these; wrapping is never acceptable.

#include <cstdint>
#include <numeric>
#include <span>
#include <string>

#include "semiq/error.hpp"

namespace semiq {

using Int = std::int64_t;

namespace arith {

[[noreturn]] inline void overflow(const char* op, Int lhs, Int rhs) {
  throw Error(ErrorKind::Overflow, std::string("integer overflow in ") + op + " (" +
                                       std::to_string(lhs) + ", " + std::to_string(rhs) + ")");
}

inline Int add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) overflow("add", a, b);
  return out;
}

inline Int sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out)) overflow("sub", a, b);
  return out;
}

inline Int mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) overflow("mul", a, b);
  return out;
}

template <typename... Rest>
Int mul(Int a, Int b, Int c, Rest... rest) {
  return mul(mul(a, b), c, rest...);
}

/// Floor division for any sign of the numerator; divisor must be positive.
inline Int floor_div(Int num, Int den) {
  Int q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

/// Ceiling division for any sign of the numerator; divisor must be positive.
inline Int ceil_div(Int num, Int den) {
  Int q = num / den;
  if ((num % den != 0) && (num > 0)) ++q;
  return q;
}

/// Division that must be exact; anything else is a NonIntegerResult.
inline Int exact_div(Int num, Int den, const char* what) {
  if (den == 0 || num % den != 0) {
    throw Error(ErrorKind::NonIntegerResult,
                std::string(what) + ": " + std::to_string(num) + " is not divisible by " +
                    std::to_string(den));
  }
  return num / den;
}

/// Non-negative residue of x modulo a positive m.
inline Int mod(Int x, Int m) {
  Int r = x % m;
  return r < 0 ? r + m : r;
}

inline Int gcd_of(std::span<const Int> values) {
  Int g = 0;
  for (Int v : values) g = std::gcd(g, v);
  return g;
}

}  // namespace arith
}  // namespace semiq
