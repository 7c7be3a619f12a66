#include "su11/error.hpp"

namespace su11 {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::StencilOutOfWindow: return "StencilOutOfWindow";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::CWRegime: return "CWRegime";
    case ErrorCode::TooCoarse: return "TooCoarse";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DegenerateJSA: return "DegenerateJSA";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::BandOutsideGrid: return "BandOutsideGrid";
    case ErrorCode::ZeroPhotons: return "ZeroPhotons";
    case ErrorCode::ModeTrackingLost: return "ModeTrackingLost";
    case ErrorCode::AllInfinite: return "AllInfinite";
    case ErrorCode::ConvergenceGateFailed: return "ConvergenceGateFailed";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace su11
