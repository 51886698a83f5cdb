#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "hyperarith/elliptic/curve.hpp"
#include "hyperarith/primes.hpp"
#include "hyperarith/rational_enum.hpp"

namespace hyperarith::elliptic {

/// Mazur: a rational torsion point has order at most 12.
inline constexpr int kMazurBound = 12;

namespace detail {

inline std::vector<Integer> divisors_from(const std::map<Integer, std::int64_t>& f) {
  std::vector<Integer> ds{1};
  for (const auto& [p, e] : f) {
    std::size_t n = ds.size();
    Integer pk = 1;
    for (std::int64_t k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline std::vector<Integer> integer_roots_of_depressed_cubic(const Integer& a, const Integer& c0,
                                                            const PrimeTable& table) {
  std::vector<Integer> roots;
  auto check = [&](const Integer& x) {
    if (x * x * x + a * x + c0 == 0) roots.push_back(x);
  };
  if (c0 == 0) {
    roots.push_back(0);
    if (auto s = exact_sqrt(-a); s && *s != 0) {
      roots.push_back(*s);
      roots.push_back(-*s);
    }
  } else {
    for (const Integer& d : divisors_from(table.factor(c0))) {
      check(d);
      check(-d);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace detail

/// All rational torsion points, infinity first, via the Lutz-Nagell candidate
/// scan on an integral model followed by an order <= 12 filter.
inline std::vector<CurvePoint> torsion_points(const Curve& c, const PrimeTable& table = default_primes()) {
  Integer u = lcm(c.a().den(), c.b().den());
  Integer u2 = u * u;
  Integer u3 = u2 * u;
  Rational ai = c.a() * Rational(u2 * u2);
  Rational bi = c.b() * Rational(u3 * u3);
  const Integer& a = ai.num();
  const Integer& b = bi.num();
  Curve integral(ai, bi);

  Integer disc = 4 * a * a * a + 27 * b * b;
  std::vector<Integer> ys{0};
  {
    std::map<Integer, std::int64_t> half;
    for (const auto& [p, e] : table.factor(disc))
      if (e / 2 > 0) half.emplace(p, e / 2);
    for (const Integer& d : detail::divisors_from(half)) {
      ys.push_back(d);
      ys.push_back(-d);
    }
  }

  std::set<CurvePoint> found{CurvePoint::infinity()};
  for (const Integer& y : ys) {
    for (const Integer& x : detail::integer_roots_of_depressed_cubic(a, b - y * y, table)) {
      CurvePoint p{Rational(x), Rational(y)};
      auto ord = point_order(integral, p, kMazurBound);
      if (ord) found.insert(CurvePoint(Rational(x, u2), Rational(y, u3)));
    }
  }
  return {found.begin(), found.end()};
}

/// Affine points with x of height <= bound, x in search order, then y ascending.
inline std::vector<CurvePoint> naive_point_search(const Curve& c, long long height_bound) {
  if (height_bound < 1) throw Error(ErrorCode::BadParameter, "height bound must be at least 1");
  std::vector<CurvePoint> out;
  for (const Rational& x : rationals_by_height(height_bound)) {
    Rational r = c.rhs(x);
    if (r.signum() < 0) continue;
    auto sn = exact_sqrt(r.num());
    auto sd = exact_sqrt(r.den());
    if (!sn || !sd) continue;
    Rational s(*sn, *sd);
    if (s.is_zero()) {
      out.emplace_back(x, s);
    } else {
      out.emplace_back(x, -s);
      out.emplace_back(x, s);
    }
  }
  return out;
}

}  // namespace hyperarith::elliptic
