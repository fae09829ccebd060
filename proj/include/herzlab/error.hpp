#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace herzlab {

enum class ErrorCode {
  NotExpansive,
  NotSquare,
  BadDim,
  OriginQuery,
  EmptySamples,
  NonPositiveLambda,
  NotInClassP,
  GridMismatch,
  EmptyBall,
  InsufficientRange,
  ReciprocalMismatch,
  BadExponent,
  BadParams,
  OutOfCoverage,
  TailUnbounded,
  ZeroFunction,
  BlockBoundViolated,
  ParamMismatch,
  CutoffTooSmall,
  EmptyGrid,
  UnresolvableScale,
  IllConditioned,
  InvalidAtom,
  NonZeroMean,
  ConfigError,
  IoError,
  UnknownTarget,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can dispatch on the kind rather than on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace herzlab
