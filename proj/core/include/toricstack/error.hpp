#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricstack {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonSpanningRays,
  ConeNotInFan,
  IndexOutOfRange,
  MismatchedUnderlyingData,
  NotInChainForm,
  NotHomogeneous,
  ZeroPolynomial,
  MismatchedSourceTarget,
  SourceNotComplete,
  TargetRaysNotSpanning,
  SourceHasGerbe,
  InvalidData,
  ParseError,
  TooLarge,
};

/// Stable machine-readable spelling, used in CLI error objects.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string location = {})
      : std::runtime_error(message), code_(code), location_(std::move(location)) {}

  ErrorCode code() const noexcept { return code_; }
  // JSON pointer into the offending document, when the error came from parsing.
  const std::string& location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::string location_;
};

}  // namespace toricstack
