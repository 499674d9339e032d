#pragma once

// Exact arithmetic shared by the schedule, metric and verification code.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace scembed {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-0.25", "1.5e-3" or "3/7" exactly.
Rational parse_rational(std::string_view text);

/// Shortest decimal that round-trips the double, parsed exactly.
Rational rational_from_double(double x);

std::string to_string(const Rational& r);  // "p/q" or "p"
double to_double(const Rational& r);

BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);

/// floor(sqrt(x)) for x >= 0.
BigInt isqrt(const BigInt& x);

/// Saturating conversion to uint64 (negative values map to 0).
std::uint64_t saturate_u64(const BigInt& x);

/// A distance stored by its exact square, so Euclidean distances between
/// rational points stay exact. All comparisons are exact.
class Distance {
 public:
  Distance() = default;
  static Distance from_value(const Rational& d);    // d >= 0
  static Distance from_square(const Rational& sq);  // sq >= 0

  const Rational& square() const noexcept { return sq_; }
  bool is_zero() const { return sq_ == 0; }
  double to_double() const;

  /// ceil(scale * d) for an integer scale >= 0.
  BigInt scaled_ceil(const BigInt& scale) const;
  /// floor(scale * d).
  BigInt scaled_floor(const BigInt& scale) const;

  /// d compared to a non-negative rational: -1, 0, +1.
  int compare(const Rational& r) const;
  friend bool operator<(const Distance& a, const Distance& b) { return a.sq_ < b.sq_; }
  friend bool operator==(const Distance& a, const Distance& b) { return a.sq_ == b.sq_; }

  /// Exact test of this <= b + c.
  bool at_most_sum(const Distance& b, const Distance& c) const;

  /// Sign of factor * this - r, exact for any rationals.
  int compare_scaled(const Rational& factor, const Rational& r) const;
  bool scaled_at_most(const Rational& factor, const Rational& r) const;
  bool scaled_at_least(const Rational& factor, const Rational& r) const;

 private:
  Rational sq_{0};
};

}  // namespace scembed
