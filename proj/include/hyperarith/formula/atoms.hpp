#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "hyperarith/elliptic/curve.hpp"
#include "hyperarith/valuation.hpp"

namespace hyperarith::formula {

/// x | y over Z: both integers and y in xZ (so 0 | 0).
inline bool divides_q(const Rational& x, const Rational& y) {
  if (!x.is_integer() || !y.is_integer()) return false;
  if (x.is_zero()) return y.is_zero();
  return y.num() % x.num() == 0;
}

inline bool is_int(const Rational& x) { return x.is_integer(); }

/// pw(x;y): x, y naturals and every nontrivial natural divisor of y is a multiple of x.
inline bool pw_holds(const Rational& x, const Rational& y) {
  if (!is_nat(x) || !is_nat(y)) return false;
  if (y == Rational(1)) return true;
  const Integer& xi = x.num();
  if (xi == 1) return true;
  if (y.is_zero()) return false;  // 2 and 3 both divide 0
  return is_prime(xi) && is_prime_power(xi, y.num());
}

inline bool pw_prime_holds(const Rational& x, const Rational& y) {
  if (pw_holds(x, y)) return true;
  return !y.is_zero() && pw_holds(x, Rational(1) / y);
}

inline bool d_p_holds(const Rational& p, const Rational& x, const Rational& y) {
  return is_int(x) && pw_holds(p, y) && divides_q(y, x) && !divides_q(p * y, x);
}

/// The unique y with d_p'(p, x, y), if any.
inline std::optional<Rational> d_p_prime_value(const Rational& p, const Rational& x) {
  if (x.is_zero() || !is_nat(p) || p == Rational(1)) return std::nullopt;
  const Integer& pi = p.num();
  if (is_prime(pi)) {
    Exponent e = integer_valuation(pi, x.num()) - integer_valuation(pi, x.den());
    return Rational(pi).pow(e);
  }
  // Non-prime p: only y = 1 is a p-power, and p must miss both numerator and denominator.
  auto hits = [&](const Integer& n) { return pi == 0 ? n == 0 : n % pi == 0; };
  if (hits(x.num()) || hits(x.den())) return std::nullopt;
  return Rational(1);
}

inline bool e_holds(const Rational& a, const Rational& b, const Rational& x, const Rational& y, const Rational& z) {
  if ((Rational(4) * a * a * a + Rational(27) * b * b).is_zero()) return false;
  if (z == Rational(1)) return y * y == x * x * x + a * x + b;
  return z.is_zero() && x.is_zero() && y == Rational(1);
}

/// Sum of two curve triples, or nullopt when the curve is singular or a triple is off the curve.
inline std::optional<std::array<Rational, 3>> add_triples(const Rational& a, const Rational& b,
                                                         std::span<const Rational> p, std::span<const Rational> q,
                                                         bool subtract = false) {
  if (!e_holds(a, b, p[0], p[1], p[2]) || !e_holds(a, b, q[0], q[1], q[2])) return std::nullopt;
  elliptic::Curve c(a, b);
  auto pp = elliptic::CurvePoint::from_triple(p[0], p[1], p[2]);
  auto qq = elliptic::CurvePoint::from_triple(q[0], q[1], q[2]);
  if (subtract) return elliptic::add(c, *pp, elliptic::neg(c, *qq)).triple();
  return elliptic::add(c, *pp, *qq).triple();
}

inline bool add_e_holds(std::span<const Rational> v) {
  const Rational& a = v[0];
  const Rational& b = v[1];
  if (!e_holds(a, b, v[8], v[9], v[10])) return false;
  auto sum = add_triples(a, b, v.subspan(2, 3), v.subspan(5, 3));
  return sum && (*sum)[0] == v[8] && (*sum)[1] == v[9] && (*sum)[2] == v[10];
}

/// Decides an oracle atom on concrete arguments (arity already checked by the parser).
inline bool atom_holds(std::string_view name, std::span<const Rational> v) {
  if (name == "Z") return is_int(v[0]);
  if (name == "N") return is_nat(v[0]);
  if (name == "P") return v[0].is_integer() && is_prime(v[0].num());
  if (name == "pw") return pw_holds(v[0], v[1]);
  if (name == "pw'") return pw_prime_holds(v[0], v[1]);
  if (name == "d_p") return d_p_holds(v[0], v[1], v[2]);
  if (name == "d_p'") {
    auto y = d_p_prime_value(v[0], v[1]);
    return y && *y == v[2];
  }
  if (name == "lt") return v[0] < v[1];
  if (name == "E") return e_holds(v[0], v[1], v[2], v[3], v[4]);
  if (name == "addE") return add_e_holds(v);
  throw Error(ErrorCode::UnknownBuiltin, "no oracle for atom " + std::string(name));
}

}  // namespace hyperarith::formula
