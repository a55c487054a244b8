#include "telescope/error.hpp"

namespace telescope {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadTable: return "BadTable";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::NotAChainMap: return "NotAChainMap";
    case ErrorCode::LaurentRing: return "LaurentRing";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::DepthTooSmall: return "DepthTooSmall";
    case ErrorCode::MissingInverse: return "MissingInverse";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::BadScale: return "BadScale";
    case ErrorCode::TruncationUnstable: return "TruncationUnstable";
    case ErrorCode::ZeroMap: return "ZeroMap";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadTable:
    case ErrorCode::NonAssociative:
    case ErrorCode::NoIdentity:
    case ErrorCode::NoInverse:
    case ErrorCode::GroupMismatch:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::EmptyWindow:
    case ErrorCode::LaurentRing:
    case ErrorCode::ZeroLambda:
    case ErrorCode::DepthTooSmall:
    case ErrorCode::MissingInverse:
    case ErrorCode::BadScale:
    case ErrorCode::ZeroMap:
    case ErrorCode::ParseError:
      return true;
    default:
      return false;
  }
}

nlohmann::json Error::to_json() const {
  return {{"error", std::string(to_string(code_))}, {"message", what()}, {"detail", detail_}};
}

}  // namespace telescope
