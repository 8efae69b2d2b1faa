#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpopt {

enum class ErrorCode {
  InvalidMatrix,
  InvalidArgument,
  NotSymmetric,
  NotPSD,
  NotPositiveStable,
  EigenFailure,
  TraceBudgetExceeded,
  NotAdmissible,
  InvalidConstant,
  DegenerateSchedule,
  InvalidInterval,
  RateTooLarge,
  NotApplicable2D,
  MixedEquilibria,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// front ends (CLI exit codes, Python exceptions) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fpopt
