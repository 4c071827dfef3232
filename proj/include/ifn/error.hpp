#ifndef IFN_ERROR_HPP
#define IFN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ifn {

enum class ErrorCode {
  InvalidLabel,
  EmptyCycle,
  DuplicateNodeInCycle,
  NegativeCoefficient,
  SyntaxError,
  EmptySignature,
  NegativeFlowResult,
  NotIrreducible,
  NotPremagic,
  CycleBudgetExceeded,
  UnknownLink,
  DimensionMismatch,
  InfeasibleKappa,
  NotStochastic,
  ZeroNodeFlow,
  Overflow,
  InvalidDocument,
  InvalidArgument,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::EmptyCycle: return "EmptyCycle";
    case ErrorCode::DuplicateNodeInCycle: return "DuplicateNodeInCycle";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::EmptySignature: return "EmptySignature";
    case ErrorCode::NegativeFlowResult: return "NegativeFlowResult";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotPremagic: return "NotPremagic";
    case ErrorCode::CycleBudgetExceeded: return "CycleBudgetExceeded";
    case ErrorCode::UnknownLink: return "UnknownLink";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InfeasibleKappa: return "InfeasibleKappa";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::ZeroNodeFlow: return "ZeroNodeFlow";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Domain errors are violations of a mathematical precondition on otherwise
/// well-formed input. Everything else is a parse or usage error.
inline bool is_domain_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeFlowResult:
    case ErrorCode::NotIrreducible:
    case ErrorCode::NotPremagic:
    case ErrorCode::CycleBudgetExceeded:
    case ErrorCode::InfeasibleKappa:
    case ErrorCode::NotStochastic:
    case ErrorCode::ZeroNodeFlow:
    case ErrorCode::Overflow:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Parse failure with the byte offset into the input text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError,
              "at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ifn

#endif  // IFN_ERROR_HPP
