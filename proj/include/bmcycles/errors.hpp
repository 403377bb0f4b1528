#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bmc {

enum class ErrorKind {
  RankMismatch,
  IndeterminateValuation,
  PrecisionExhausted,
  InexactDivision,
  NonTerminating,
  NonDominant,
  BoundViolated,
  IrregularHodgeType,
  WindowTooShort,
  PreconditionViolated,
  SingularMatrix,
  FiltrationTypeMismatch,
  CollidingPiValues,
  HeightViolated,
  UnsupportedRank,
  ConvergenceConditionViolated,
  NonIntegralLimit,
  IntegralityViolated,
  IntegralityFailure,
  SchemaError,
  UnknownSuite,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::IndeterminateValuation: return "IndeterminateValuation";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::InexactDivision: return "InexactDivision";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::NonDominant: return "NonDominant";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::IrregularHodgeType: return "IrregularHodgeType";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::FiltrationTypeMismatch: return "FiltrationTypeMismatch";
    case ErrorKind::CollidingPiValues: return "CollidingPiValues";
    case ErrorKind::HeightViolated: return "HeightViolated";
    case ErrorKind::UnsupportedRank: return "UnsupportedRank";
    case ErrorKind::ConvergenceConditionViolated: return "ConvergenceConditionViolated";
    case ErrorKind::NonIntegralLimit: return "NonIntegralLimit";
    case ErrorKind::IntegralityViolated: return "IntegralityViolated";
    case ErrorKind::IntegralityFailure: return "IntegralityFailure";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}
inline void require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) fail(kind, what);
}

}  // namespace bmc
