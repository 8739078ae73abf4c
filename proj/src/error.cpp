#include "semiq/error.hpp"

namespace semiq {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorKind::GcdNotOne: return "GcdNotOne";
    case ErrorKind::NotAGenerator: return "NotAGenerator";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::DivisorMismatch: return "DivisorMismatch";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::TPrimeOdd: return "TPrimeOdd";
    case ErrorKind::NonIntegerResult: return "NonIntegerResult";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::Overflow: return "OverflowError";
    case ErrorKind::InternalBound: return "InternalBoundError";
    case ErrorKind::MismatchFound: return "MismatchFound";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace semiq
