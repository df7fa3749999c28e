#include "gq/error.hpp"

namespace gq {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::BadSubsystem: return "BadSubsystem";
    case ErrorCode::BadCut: return "BadCut";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::BadQ: return "BadQ";
    case ErrorCode::BadDomain: return "BadDomain";
    case ErrorCode::RegimeError: return "RegimeError";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::BadFocus: return "BadFocus";
    case ErrorCode::BadAlpha: return "BadAlpha";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace gq
