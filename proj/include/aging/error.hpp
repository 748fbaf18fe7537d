#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aging {

/// Domain error cases. Each module raises the subset named in its header.
enum class ErrorCode {
  OutOfSupport,
  NonPositiveRate,
  InvalidParameter,
  QuadratureFailure,
  DivergentFunctional,
  MixedSupports,
  EmptyList,
  NonPositiveEntry,
  ParseError,
  EmptyData,
  AllCensored,
  BandwidthTooSmall,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// ParseError carrying the 1-based data row that failed.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, const std::string& detail);

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace aging
