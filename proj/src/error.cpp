#include "aging/error.hpp"

namespace aging {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfSupport: return "OutOfSupport";
    case ErrorCode::NonPositiveRate: return "NonPositiveRate";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DivergentFunctional: return "DivergentFunctional";
    case ErrorCode::MixedSupports: return "MixedSupports";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyData: return "EmptyData";
    case ErrorCode::AllCensored: return "AllCensored";
    case ErrorCode::BandwidthTooSmall: return "BandwidthTooSmall";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

ParseError::ParseError(std::size_t row, const std::string& detail)
    : Error(ErrorCode::ParseError, "row " + std::to_string(row) + ": " + detail), row_(row) {}

}  // namespace aging
