#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperarith/rational.hpp"

namespace hyperarith::elliptic {

/// Short Weierstrass curve y^2 = x^3 + A x + B over Q with 4A^3 + 27B^2 != 0.
class Curve {
 public:
  Curve(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    if (discriminant_core().is_zero())
      throw Error(ErrorCode::Singular, "4A^3+27B^2 = 0 for A=" + a_.str() + ", B=" + b_.str());
  }

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }

  /// 4A^3 + 27B^2.
  Rational discriminant_core() const { return Rational(4) * a_ * a_ * a_ + Rational(27) * b_ * b_; }

  Rational rhs(const Rational& x) const { return x * x * x + a_ * x + b_; }

  std::string str() const { return "y^2 = x^3 + (" + a_.str() + ")x + (" + b_.str() + ")"; }

  friend bool operator==(const Curve&, const Curve&) = default;

 private:
  Rational a_;
  Rational b_;
};

inline Curve curve_new(Rational a, Rational b) { return Curve(std::move(a), std::move(b)); }

/// A point of E(Q): the point at infinity or an affine pair.
class CurvePoint {
 public:
  CurvePoint() = default;  // infinity
  CurvePoint(Rational x, Rational y) : affine_(true), x_(std::move(x)), y_(std::move(y)) {}

  static CurvePoint infinity() { return {}; }

  bool is_infinity() const noexcept { return !affine_; }
  const Rational& x() const noexcept { return x_; }
  const Rational& y() const noexcept { return y_; }

  /// Projective triple (x, y, z), z in {0, 1}; infinity is (0, 1, 0).
  std::array<Rational, 3> triple() const {
    if (!affine_) return {Rational(0), Rational(1), Rational(0)};
    return {x_, y_, Rational(1)};
  }

  /// Inverse of triple(); nullopt when the triple is not of the form (x,y,1) or (0,1,0).
  static std::optional<CurvePoint> from_triple(const Rational& x, const Rational& y, const Rational& z) {
    if (z == Rational(1)) return CurvePoint(x, y);
    if (z.is_zero() && x.is_zero() && y == Rational(1)) return infinity();
    return std::nullopt;
  }

  std::string str() const { return affine_ ? "(" + x_.str() + "," + y_.str() + ")" : "O"; }

  friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.affine_ != q.affine_) return false;
    return !p.affine_ || (p.x_ == q.x_ && p.y_ == q.y_);
  }

  /// Infinity first, then by (x, y).
  friend bool operator<(const CurvePoint& p, const CurvePoint& q) {
    if (p.affine_ != q.affine_) return !p.affine_;
    if (!p.affine_) return false;
    if (p.x_ != q.x_) return p.x_ < q.x_;
    return p.y_ < q.y_;
  }

 private:
  bool affine_ = false;
  Rational x_;
  Rational y_;
};

inline bool on_curve(const Curve& c, const CurvePoint& p) {
  return p.is_infinity() || p.y() * p.y() == c.rhs(p.x());
}

namespace detail {
inline void require_on_curve(const Curve& c, const CurvePoint& p) {
  if (!on_curve(c, p)) throw Error(ErrorCode::PointNotOnCurve, p.str() + " is not on " + c.str());
}

inline CurvePoint add_unchecked(const Curve& c, const CurvePoint& p, const CurvePoint& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  Rational lambda;
  if (p.x() == q.x()) {
    if (p.y() != q.y() || p.y().is_zero()) return CurvePoint::infinity();
    lambda = (Rational(3) * p.x() * p.x() + c.a()) / (Rational(2) * p.y());
  } else {
    lambda = (q.y() - p.y()) / (q.x() - p.x());
  }
  Rational x3 = lambda * lambda - p.x() - q.x();
  Rational y3 = lambda * (p.x() - x3) - p.y();
  return {std::move(x3), std::move(y3)};
}
}  // namespace detail

/// Chord-tangent sum.
inline CurvePoint add(const Curve& c, const CurvePoint& p, const CurvePoint& q) {
  detail::require_on_curve(c, p);
  detail::require_on_curve(c, q);
  return detail::add_unchecked(c, p, q);
}

inline CurvePoint neg(const Curve& c, const CurvePoint& p) {
  detail::require_on_curve(c, p);
  if (p.is_infinity()) return p;
  return {p.x(), -p.y()};
}

/// n * P by double-and-add; smul(-n, P) = -(n P).
inline CurvePoint smul(const Curve& c, const Integer& n, const CurvePoint& p) {
  detail::require_on_curve(c, p);
  Integer k = abs(n);
  CurvePoint base = n < 0 ? CurvePoint(neg(c, p)) : p;
  CurvePoint acc = CurvePoint::infinity();
  while (k > 0) {
    if ((k & 1) != 0) acc = detail::add_unchecked(c, acc, base);
    k >>= 1;
    if (k > 0) base = detail::add_unchecked(c, base, base);
  }
  return acc;
}

/// Smallest k in [1, limit] with kP = O, if any.
inline std::optional<int> point_order(const Curve& c, const CurvePoint& p, int limit) {
  detail::require_on_curve(c, p);
  CurvePoint acc = p;
  for (int k = 1; k <= limit; ++k) {
    if (acc.is_infinity()) return k;
    acc = detail::add_unchecked(c, acc, p);
  }
  return std::nullopt;
}

}  // namespace hyperarith::elliptic
