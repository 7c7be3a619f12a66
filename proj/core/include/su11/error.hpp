#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace su11 {

enum class ErrorCode {
  InvalidArgument,
  OutOfWindow,
  StencilOutOfWindow,
  NoSolution,
  CWRegime,
  TooCoarse,
  ConvergenceFailure,
  DegenerateJSA,
  BoundaryPoint,
  BandOutsideGrid,
  ZeroPhotons,
  ModeTrackingLost,
  AllInfinite,
  ConvergenceGateFailed,
  Config,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace su11
