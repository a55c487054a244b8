#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace telescope {

enum class ErrorCode {
  // group / algebra
  BadTable,
  NonAssociative,
  NoIdentity,
  NoInverse,
  GroupMismatch,
  NotInvariant,
  // laurent
  DimensionMismatch,
  EmptyWindow,
  // complexes
  NotAComplex,
  NotAChainMap,
  LaurentRing,
  ZeroLambda,
  // certificates
  DepthTooSmall,
  MissingInverse,
  NotIdempotent,
  BadScale,
  TruncationUnstable,
  // spectral
  ZeroMap,
  // io
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by malformed input rather than a mathematical
/// failure of a well-formed input. The CLI maps these to exit code 2.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

  nlohmann::json to_json() const;

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

}  // namespace telescope
