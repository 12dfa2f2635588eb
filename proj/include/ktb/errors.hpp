#pragma once

#include <stdexcept>
#include <string>

namespace ktb {

enum class ErrorCode {
  inessential_curve,
  index_out_of_range,
  not_embedded,
  multiple_components,
  config_mismatch,
  not_in_four_holed_piece,
  not_disjoint_from_shared,
  wrong_curve_count,
  isotopic_pair,
  bad_region,
  illegal_step,
  empty_path,
  not_in_dc,
  length_mismatch,
  lower_bound_gap,
  bad_parameters,
  parse_error,
  unresolved_name,
  invariant_violation,
  not_found_within_bounds,
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::inessential_curve: return "InessentialCurve";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::not_embedded: return "NotEmbedded";
    case ErrorCode::multiple_components: return "MultipleComponents";
    case ErrorCode::config_mismatch: return "ConfigMismatch";
    case ErrorCode::not_in_four_holed_piece: return "NotInFourHoledPiece";
    case ErrorCode::not_disjoint_from_shared: return "NotDisjointFromShared";
    case ErrorCode::wrong_curve_count: return "WrongCurveCount";
    case ErrorCode::isotopic_pair: return "IsotopicPair";
    case ErrorCode::bad_region: return "BadRegion";
    case ErrorCode::illegal_step: return "IllegalStep";
    case ErrorCode::empty_path: return "EmptyPath";
    case ErrorCode::not_in_dc: return "NotInDc";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::lower_bound_gap: return "LowerBoundGap";
    case ErrorCode::bad_parameters: return "BadParameters";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::unresolved_name: return "UnresolvedName";
    case ErrorCode::invariant_violation: return "InvariantViolation";
    case ErrorCode::not_found_within_bounds: return "NotFoundWithinBounds";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ktb
