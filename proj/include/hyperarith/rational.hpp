#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "hyperarith/errors.hpp"

namespace hyperarith {

using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

/// Nonnegative gcd; gcd(0, 0) = 0.
inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

inline Integer ipow(Integer base, std::uint64_t e) {
  Integer r = 1;
  while (e > 0) {
    if (e & 1U) r *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return r;
}

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw Error(ErrorCode::BadParameter, "isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer r = isqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

/// Parses an optionally signed decimal integer; throws ParseError.
inline Integer parse_integer(std::string_view s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw Error(ErrorCode::ParseError, "empty integer '" + std::string(s) + "'");
  Integer v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? Integer(-v) : v;
}

inline std::string to_string(const Integer& v) { return v.str(); }

/// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const Integer& num() const noexcept { return num_; }
  const Integer& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int signum() const noexcept { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  /// max(|num|, den); 0 has height 1.
  Integer height() const { return std::max(abs(num_), den_); }

  Rational operator-() const { return Rational(-num_, den_, Canonical{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ + b.num_, 1, Canonical{});
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ - b.num_, 1, Canonical{});
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ * b.num_, 1, Canonical{});
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error(ErrorCode::ZeroArgument, "division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Integer l = a.num_ * b.den_;
    Integer r = b.num_ * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational pow(long long e) const {
    if (e < 0) {
      if (is_zero()) throw Error(ErrorCode::ZeroArgument, "negative power of zero");
      return Rational(den_, num_).pow(-e);
    }
    return Rational(ipow(num_, static_cast<std::uint64_t>(e)), ipow(den_, static_cast<std::uint64_t>(e)),
                    Canonical{});
  }

  std::string str() const { return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str(); }

  /// Accepts "p", "-p", "p/q" with decimal digits.
  static Rational parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    Integer n = parse_integer(s.substr(0, slash));
    Integer d = parse_integer(s.substr(slash + 1));
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(s) + "'");
    return Rational(std::move(n), std::move(d));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  struct Canonical {};
  Rational(Integer n, Integer d, Canonical) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_ == 0) throw Error(ErrorCode::ZeroArgument, "zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Integer g = gcd(num_, den_);
    if (g != 1 && g != 0) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  Integer num_;
  Integer den_;
};

}  // namespace hyperarith
