#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace semiq {

enum class ErrorKind {
  EmptyInput,
  NonPositiveEntry,
  GcdNotOne,
  NotAGenerator,
  NotCoprime,
  DivisorMismatch,
  ConstraintViolation,
  TPrimeOdd,
  NonIntegerResult,
  InvalidTable,
  Overflow,
  InternalBound,
  MismatchFound,
  Config,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `detail()` carries the offending
/// integer when there is a single one worth reporting (e.g. the gcd for
/// GcdNotOne).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::int64_t> detail = std::nullopt)
      : std::runtime_error(message), kind_(kind), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::int64_t> detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::optional<std::int64_t> detail_;
};

}  // namespace semiq
