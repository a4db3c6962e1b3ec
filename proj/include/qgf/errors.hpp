#pragma once

#include <stdexcept>
#include <string>

namespace qgf {

// Stable error codes, used by the CLI to map failures to exit statuses and
// machine-readable error records.
enum class ErrorCode {
  Validation,
  Domain,
  NoSolution,
  NoTransition,
  OutOfModelRange,
  SingularFisher,
  NegativeVariance,
  CutoffTooSmall,
  ConvergenceFailure,
  UnsupportedScenario,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Validation: return "VALIDATION";
    case ErrorCode::Domain: return "MU_DOMAIN";
    case ErrorCode::NoSolution: return "NO_SOLUTION";
    case ErrorCode::NoTransition: return "NO_TRANSITION";
    case ErrorCode::OutOfModelRange: return "OUT_OF_MODEL_RANGE";
    case ErrorCode::SingularFisher: return "SINGULAR_FISHER";
    case ErrorCode::NegativeVariance: return "NEGATIVE_VARIANCE";
    case ErrorCode::CutoffTooSmall: return "CUTOFF_TOO_SMALL";
    case ErrorCode::ConvergenceFailure: return "CONVERGENCE_FAILURE";
    case ErrorCode::UnsupportedScenario: return "UNSUPPORTED_SCENARIO";
  }
  return "UNKNOWN";
}

[[noreturn]] inline void throw_domain(const std::string& msg) {
  throw Error(ErrorCode::Domain, msg);
}
[[noreturn]] inline void throw_validation(const std::string& msg) {
  throw Error(ErrorCode::Validation, msg);
}

}  // namespace qgf
