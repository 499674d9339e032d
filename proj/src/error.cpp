#include "scembed/error.hpp"

namespace scembed {

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::limit_exceeded:
    case ErrorCode::ball_overflow:
      return ErrorCategory::resource;
    case ErrorCode::exhausted_length_class:
    case ErrorCode::infeasible:
      return ErrorCategory::internal;
    default:
      return ErrorCategory::input;
  }
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_exponent: return "InvalidExponent";
    case ErrorCode::invalid_word: return "InvalidWord";
    case ErrorCode::empty_word: return "EmptyWord";
    case ErrorCode::not_cyclically_reduced: return "NotCyclicallyReduced";
    case ErrorCode::catalog_exhausted: return "CatalogExhausted";
    case ErrorCode::family_empty: return "FamilyEmpty";
    case ErrorCode::invalid_length: return "InvalidLength";
    case ErrorCode::symmetry_violation: return "SymmetryViolation";
    case ErrorCode::triangle_violation: return "TriangleViolation";
    case ErrorCode::missing_basepoint: return "MissingBasepoint";
    case ErrorCode::not_nested: return "NotNested";
    case ErrorCode::bad_space: return "BadSpace";
    case ErrorCode::infeasible: return "Infeasible";
    case ErrorCode::exhausted_length_class: return "ExhaustedLengthClass";
    case ErrorCode::broken_path: return "BrokenPath";
    case ErrorCode::not_a_gamma_word: return "NotAGammaWord";
    case ErrorCode::limit_exceeded: return "LimitExceeded";
    case ErrorCode::unknown_pair: return "UnknownPair";
    case ErrorCode::ball_overflow: return "BallOverflow";
    case ErrorCode::bad_config: return "BadConfig";
    case ErrorCode::io: return "IoError";
    case ErrorCode::parse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace scembed
