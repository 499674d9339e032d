#pragma once

#include <stdexcept>
#include <string>

namespace scembed {

// Error categories double as process exit codes (see tools/scembed_cli.cpp).
enum class ErrorCategory : int {
  verification = 1,
  input = 2,
  resource = 3,
  internal = 4,
};

enum class ErrorCode {
  invalid_exponent,
  invalid_word,
  empty_word,
  not_cyclically_reduced,
  catalog_exhausted,
  family_empty,
  invalid_length,
  symmetry_violation,
  triangle_violation,
  missing_basepoint,
  not_nested,
  bad_space,
  infeasible,
  exhausted_length_class,
  broken_path,
  not_a_gamma_word,
  limit_exceeded,
  unknown_pair,
  ball_overflow,
  bad_config,
  io,
  parse,
};

ErrorCategory category_of(ErrorCode code) noexcept;
const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace scembed
