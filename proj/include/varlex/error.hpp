#pragma once

#include <stdexcept>
#include <string>

namespace varlex {

enum class ErrorCode {
  InvalidInput,         // malformed file, config, or argument
  EmptyDomain,          // mask leaves no active cell
  NonUniformSpacing,    // per-axis spacings differ
  DomainMismatch,       // fields live on different domains
  ExponentRange,        // exponent outside (1, inf) or p_max >= n/alpha
  HypothesisViolation,  // input violates a stated precondition of a check
  ZeroFunction,         // operation undefined for the zero function
  FamilyMismatch,       // cube family built for a different grid
  Internal,             // must-not-happen state (e.g. bisection cap reached)
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace varlex
