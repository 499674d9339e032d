#include "scembed/exact.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "scembed/error.hpp"

namespace scembed {

namespace {

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::parse, "not a rational number: '" + std::string(text) + "'");
}

BigInt parse_integer(std::string_view text) {
  if (text.empty()) bad_number(text);
  BigInt r = 0;
  for (char c : text) {
    if (c < '0' || c > '9') bad_number(text);
    r = r * 10 + (c - '0');
  }
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) bad_number(text);
  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(body.substr(0, slash));
    BigInt den = parse_integer(body.substr(slash + 1));
    if (den == 0) bad_number(text);
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = body.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      BigInt ev = parse_integer(exp_text);
      if (ev > 4000) bad_number(text);
      exponent = exp_negative ? -static_cast<long>(ev) : static_cast<long>(ev);
      body = body.substr(0, e);
    }
    std::string_view int_part = body;
    std::string_view frac_part;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
      int_part = body.substr(0, dot);
      frac_part = body.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) bad_number(text);
    BigInt digits = 0;
    for (char c : int_part) {
      if (c < '0' || c > '9') bad_number(text);
      digits = digits * 10 + (c - '0');
    }
    for (char c : frac_part) {
      if (c < '0' || c > '9') bad_number(text);
      digits = digits * 10 + (c - '0');
    }
    exponent -= static_cast<long>(frac_part.size());
    if (exponent >= 0) {
      value = Rational(digits * pow10(static_cast<unsigned>(exponent)));
    } else {
      value = Rational(digits, pow10(static_cast<unsigned>(-exponent)));
    }
  }
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error(ErrorCode::parse, "cannot format double");
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt floor_of(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);  // truncates toward zero
  if (r < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& r) {
  BigInt f = floor_of(r);
  return f == r ? f : BigInt(f + 1);
}

BigInt isqrt(const BigInt& x) {
  if (x < 0) throw Error(ErrorCode::parse, "isqrt of a negative number");
  return boost::multiprecision::sqrt(x);
}

std::uint64_t saturate_u64(const BigInt& x) {
  if (x <= 0) return 0;
  if (x >= BigInt(UINT64_MAX)) return UINT64_MAX;
  return x.convert_to<std::uint64_t>();
}

Distance Distance::from_value(const Rational& d) {
  if (d < 0) throw Error(ErrorCode::bad_space, "negative distance " + to_string(d));
  Distance out;
  out.sq_ = d * d;
  return out;
}

Distance Distance::from_square(const Rational& sq) {
  if (sq < 0) throw Error(ErrorCode::bad_space, "negative squared distance");
  Distance out;
  out.sq_ = sq;
  return out;
}

double Distance::to_double() const { return std::sqrt(scembed::to_double(sq_)); }

BigInt Distance::scaled_ceil(const BigInt& scale) const {
  // smallest y >= 0 with y^2 * q >= scale^2 * p, where sq = p/q
  const BigInt& p = numerator(sq_);
  const BigInt& q = denominator(sq_);
  BigInt t = scale * scale * p;
  BigInt y = isqrt(t / q);
  while (y * y * q < t) ++y;
  return y;
}

BigInt Distance::scaled_floor(const BigInt& scale) const {
  return isqrt(scale * scale * numerator(sq_) / denominator(sq_));
}

int Distance::compare(const Rational& r) const {
  Rational r2 = r * r;
  if (sq_ < r2) return -1;
  if (sq_ > r2) return 1;
  return 0;
}

bool Distance::at_most_sum(const Distance& b, const Distance& c) const {
  Rational t = sq_ - b.sq_ - c.sq_;
  if (t <= 0) return true;
  return t * t <= 4 * b.sq_ * c.sq_;
}

int Distance::compare_scaled(const Rational& factor, const Rational& r) const {
  const int sx = sq_ == 0 ? 0 : (factor > 0) - (factor < 0);
  const int sr = (r > 0) - (r < 0);
  if (sx != sr) return sx < sr ? -1 : 1;
  if (sx == 0) return 0;
  const Rational lhs = factor * factor * sq_;
  const Rational rhs = r * r;
  const int mag = lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  return sx > 0 ? mag : -mag;
}

bool Distance::scaled_at_most(const Rational& factor, const Rational& r) const { return compare_scaled(factor, r) <= 0; }

bool Distance::scaled_at_least(const Rational& factor, const Rational& r) const {
  return compare_scaled(factor, r) >= 0;
}

}  // namespace scembed
