#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arrmono {

enum class ErrorKind {
  CompositeModulus,
  EvenModulus,
  TableBudgetExceeded,
  IncompatibleDegrees,
  NonSquare,
  NonIntegralDivision,
  ZeroVector,
  BadParity,
  IsotropicVector,
  NotAnIsometry,
  UnsupportedDim,
  DomainBudgetExceeded,
  BadDegree,
  NotGeneralPosition,
  SamplingExhausted,
  DuplicatePoints,
  InconsistentCounts,
  DegreeBudgetExceeded,
  NonSquareMultiplier,
  SmallEllForEvenN,
  InvalidArgument,
  ParseError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::CompositeModulus: return "CompositeModulus";
    case ErrorKind::EvenModulus: return "EvenModulus";
    case ErrorKind::TableBudgetExceeded: return "TableBudgetExceeded";
    case ErrorKind::IncompatibleDegrees: return "IncompatibleDegrees";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NonIntegralDivision: return "NonIntegralDivision";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::BadParity: return "BadParity";
    case ErrorKind::IsotropicVector: return "IsotropicVector";
    case ErrorKind::NotAnIsometry: return "NotAnIsometry";
    case ErrorKind::UnsupportedDim: return "UnsupportedDim";
    case ErrorKind::DomainBudgetExceeded: return "DomainBudgetExceeded";
    case ErrorKind::BadDegree: return "BadDegree";
    case ErrorKind::NotGeneralPosition: return "NotGeneralPosition";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::DuplicatePoints: return "DuplicatePoints";
    case ErrorKind::InconsistentCounts: return "InconsistentCounts";
    case ErrorKind::DegreeBudgetExceeded: return "DegreeBudgetExceeded";
    case ErrorKind::NonSquareMultiplier: return "NonSquareMultiplier";
    case ErrorKind::SmallEllForEvenN: return "SmallEllForEvenN";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace arrmono
