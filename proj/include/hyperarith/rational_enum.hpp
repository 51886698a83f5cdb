#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "hyperarith/rational.hpp"

namespace hyperarith {

/// Rationals of height max(|num|, den) <= bound in the search order used
/// throughout: by increasing height, then numerator, then denominator.
inline std::vector<Rational> rationals_by_height(long long bound) {
  std::vector<Rational> out;
  if (bound < 1) return out;
  for (long long h = 1; h <= bound; ++h) {
    std::vector<Rational> level;
    // num = +-h with den <= h, or den = h with |num| < h.
    for (long long d = 1; d <= h; ++d) {
      if (std::gcd(h, d) != 1) continue;
      level.emplace_back(Integer(h), Integer(d));
      level.emplace_back(Integer(-h), Integer(d));
    }
    for (long long n = -(h - 1); n <= h - 1; ++n) {
      if (std::gcd(n < 0 ? -n : n, h) != 1) continue;
      if (n == 0 && h != 1) continue;
      level.emplace_back(Integer(n), Integer(h));
    }
    std::sort(level.begin(), level.end(), [](const Rational& a, const Rational& b) {
      if (a.num() != b.num()) return a.num() < b.num();
      return a.den() < b.den();
    });
    level.erase(std::unique(level.begin(), level.end()), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

/// Integers of absolute value <= bound ordered by height then value.
inline std::vector<Rational> integers_by_height(long long bound, bool naturals_only) {
  std::vector<Rational> out;
  if (bound >= 0) out.emplace_back(0);
  for (long long h = 1; h <= bound; ++h) {
    if (!naturals_only) out.emplace_back(-h);
    out.emplace_back(h);
  }
  // Height of 0 is 1, so -1, 0, 1 share a level.
  if (!naturals_only && bound >= 1) std::swap(out[0], out[1]);
  return out;
}

}  // namespace hyperarith
