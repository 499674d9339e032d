#pragma once

// The small-cancellation schedule lambda(n) and growth lower bounds sigma(n).

#include <cstdint>

#include "scembed/exact.hpp"

namespace scembed {

/// 9/k + 2k/(n - 2 sqrt n) with k = floor(sqrt n), for n >= 81. For
/// non-square n, sqrt n is replaced by a rational upper bound within 2^-32,
/// which can only enlarge the value.
Rational lambda_raw(std::uint64_t n);

/// max over m >= n of lambda_raw(m). Within one block k^2 <= m < (k+1)^2 the
/// raw value decreases in m and its block-start values decrease in k, so the
/// maximum is max(raw(n), raw((k+1)^2)).
Rational lambda_envelope(std::uint64_t n);

/// Smallest n >= 81 with lambda_envelope(n) <= threshold.
std::uint64_t lambda_cutoff(const Rational& threshold);

class LambdaSchedule {
 public:
  LambdaSchedule(bool cutoff_enabled, Rational threshold);

  /// Non-increasing, tends to 0. With the cutoff enabled it equals the
  /// threshold up to cutoff_n() and the envelope afterwards; without it, the
  /// envelope evaluated at max(n, 81).
  Rational effective(std::uint64_t n) const;

  bool cutoff_enabled() const noexcept { return cutoff_; }
  const Rational& threshold() const noexcept { return threshold_; }
  std::uint64_t cutoff_n() const noexcept { return cutoff_n_; }

 private:
  bool cutoff_;
  Rational threshold_;
  std::uint64_t cutoff_n_ = 0;
};

/// floor(floor(1.5^m / k) / (2k + 1)) with m = k - prefix_run - 2, saturated.
std::uint64_t block_sigma_bound(std::uint64_t k, unsigned prefix_run);

/// Exact count of primitive cyclically reduced words of length n in F(a, b),
/// saturated at 2^64 - 1.
std::uint64_t primitive_cyclically_reduced_count(std::uint64_t n);

}  // namespace scembed
