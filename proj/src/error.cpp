#include "herzlab/error.hpp"

namespace herzlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotExpansive: return "NotExpansive";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::BadDim: return "BadDim";
    case ErrorCode::OriginQuery: return "OriginQuery";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
    case ErrorCode::NotInClassP: return "NotInClassP";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::EmptyBall: return "EmptyBall";
    case ErrorCode::InsufficientRange: return "InsufficientRange";
    case ErrorCode::ReciprocalMismatch: return "ReciprocalMismatch";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::OutOfCoverage: return "OutOfCoverage";
    case ErrorCode::TailUnbounded: return "TailUnbounded";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::BlockBoundViolated: return "BlockBoundViolated";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::UnresolvableScale: return "UnresolvableScale";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::InvalidAtom: return "InvalidAtom";
    case ErrorCode::NonZeroMean: return "NonZeroMean";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace herzlab
