#include "fpopt/errors.hpp"

namespace fpopt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotPositiveStable: return "NotPositiveStable";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::TraceBudgetExceeded: return "TraceBudgetExceeded";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::InvalidConstant: return "InvalidConstant";
    case ErrorCode::DegenerateSchedule: return "DegenerateSchedule";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::RateTooLarge: return "RateTooLarge";
    case ErrorCode::NotApplicable2D: return "NotApplicable2D";
    case ErrorCode::MixedEquilibria: return "MixedEquilibria";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace fpopt
