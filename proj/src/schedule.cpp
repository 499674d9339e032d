#include "scembed/schedule.hpp"

#include <vector>

#include "scembed/error.hpp"

namespace scembed {

namespace {

constexpr unsigned sqrt_bits = 32;

// Rational s >= sqrt(n), exact when n is a perfect square.
Rational sqrt_upper(std::uint64_t n) {
  BigInt root = isqrt(BigInt(n));
  if (root * root == n) return Rational(root);
  BigInt scaled = BigInt(n) << (2 * sqrt_bits);
  BigInt r = isqrt(scaled);
  if (r * r != scaled) ++r;
  return Rational(r, BigInt(1) << sqrt_bits);
}

}  // namespace

Rational lambda_raw(std::uint64_t n) {
  if (n < 81) throw Error(ErrorCode::invalid_length, "lambda formula needs n >= 81, got " + std::to_string(n));
  BigInt k = isqrt(BigInt(n));
  Rational s = sqrt_upper(n);
  return Rational(9, k) + Rational(2 * k) / (Rational(n) - 2 * s);
}

Rational lambda_envelope(std::uint64_t n) {
  if (n < 81) n = 81;
  std::uint64_t k = saturate_u64(isqrt(BigInt(n)));
  Rational here = lambda_raw(n);
  BigInt next_start = BigInt(k + 1) * (k + 1);
  if (next_start > BigInt(UINT64_MAX)) return here;
  Rational ahead = lambda_raw(next_start.convert_to<std::uint64_t>());
  return here > ahead ? here : ahead;
}

std::uint64_t lambda_cutoff(const Rational& threshold) {
  if (threshold <= 0) throw Error(ErrorCode::bad_config, "lambda threshold must be positive");
  std::uint64_t lo = 81;
  if (lambda_envelope(lo) <= threshold) return lo;
  std::uint64_t hi = 162;
  while (lambda_envelope(hi) > threshold) {
    if (hi > (UINT64_MAX >> 2)) throw Error(ErrorCode::bad_config, "lambda threshold too small");
    lo = hi;
    hi *= 2;
  }
  // envelope(lo) > threshold >= envelope(hi)
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (lambda_envelope(mid) <= threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

LambdaSchedule::LambdaSchedule(bool cutoff_enabled, Rational threshold)
    : cutoff_(cutoff_enabled), threshold_(std::move(threshold)) {
  if (cutoff_) cutoff_n_ = lambda_cutoff(threshold_);
}

Rational LambdaSchedule::effective(std::uint64_t n) const {
  if (cutoff_ && n <= cutoff_n_) return threshold_;
  return lambda_envelope(n < 81 ? 81 : n);
}

std::uint64_t block_sigma_bound(std::uint64_t k, unsigned prefix_run) {
  if (k <= prefix_run + 2ull) return 0;
  const std::uint64_t m = k - prefix_run - 2;
  // 1.5^m > 2^(0.58 m); beyond m = 2000 every quotient below saturates.
  if (m > 2000) return UINT64_MAX;
  BigInt three = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(m));
  BigInt two = BigInt(1) << static_cast<unsigned>(m);
  BigInt per_k = three / (two * k);
  return saturate_u64(per_k / (2 * BigInt(k) + 1));
}

std::uint64_t primitive_cyclically_reduced_count(std::uint64_t n) {
  if (n == 0) return 0;
  if (n > 200) return UINT64_MAX;
  auto cyclically_reduced = [](std::uint64_t d) {
    BigInt c = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(d)) + 1;
    if (d % 2 == 0) c += 2;
    return c;
  };
  auto mobius = [](std::uint64_t x) {
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= x; ++p) {
      if (x % p != 0) continue;
      x /= p;
      if (x % p == 0) return 0;
      mu = -mu;
    }
    if (x > 1) mu = -mu;
    return mu;
  };
  BigInt total = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    total += mobius(n / d) * cyclically_reduced(d);
  }
  return saturate_u64(total);
}

}  // namespace scembed
