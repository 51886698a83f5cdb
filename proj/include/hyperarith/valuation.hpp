#pragma once

// Exact valuations, signs and the prime-factorization embedding of Q* into
// (product of p^Z) x {+1, -1}.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperarith/primes.hpp"
#include "hyperarith/rational.hpp"

namespace hyperarith {

using Exponent = std::int64_t;

/// p^exp as an element of the multiplicative value group p^Z.
struct PrimePower {
  Integer p;
  Exponent exp = 0;

  Rational value() const { return Rational(p).pow(exp); }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
  /// The order <_p: a <_p b iff b/a lies in p^N.
  friend bool operator<(const PrimePower& a, const PrimePower& b) { return a.exp < b.exp; }
};

struct SignedFactorization {
  int sign = 1;
  std::map<Integer, Exponent> exps;

  friend bool operator==(const SignedFactorization&, const SignedFactorization&) = default;
};

/// Finite sorted set of primes, or the distinguished set of all primes (pr(0)).
class PrimeSet {
 public:
  PrimeSet() = default;
  explicit PrimeSet(std::vector<Integer> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
  }
  static PrimeSet all() {
    PrimeSet s;
    s.all_ = true;
    return s;
  }

  bool is_all() const noexcept { return all_; }
  bool empty() const noexcept { return !all_ && primes_.empty(); }
  const std::vector<Integer>& primes() const noexcept { return primes_; }

  bool contains(const Integer& p) const {
    return all_ || std::binary_search(primes_.begin(), primes_.end(), p);
  }

  bool is_subset_of(const PrimeSet& o) const {
    if (o.all_) return true;
    if (all_) return false;
    return std::includes(o.primes_.begin(), o.primes_.end(), primes_.begin(), primes_.end());
  }

  PrimeSet intersect(const PrimeSet& o) const {
    if (all_) return o;
    if (o.all_) return *this;
    std::vector<Integer> r;
    std::set_intersection(primes_.begin(), primes_.end(), o.primes_.begin(), o.primes_.end(),
                          std::back_inserter(r));
    return PrimeSet(std::move(r));
  }

  PrimeSet unite(const PrimeSet& o) const {
    if (all_ || o.all_) return all();
    std::vector<Integer> r;
    std::set_union(primes_.begin(), primes_.end(), o.primes_.begin(), o.primes_.end(), std::back_inserter(r));
    return PrimeSet(std::move(r));
  }

  std::string str() const {
    if (all_) return "ALL";
    std::string s = "{";
    for (std::size_t i = 0; i < primes_.size(); ++i) s += (i ? "," : "") + primes_[i].str();
    return s + "}";
  }

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

 private:
  bool all_ = false;
  std::vector<Integer> primes_;
};

/// Nonnegative generator of nZ + mZ.
inline Integer gcd_ideal(const Integer& n, const Integer& m) {
  if (n == 0 && m == 0) throw Error(ErrorCode::BothZero, "gcd_ideal(0, 0)");
  return gcd(n, m);
}

inline bool is_prime(const Integer& x, const PrimeTable& table = default_primes()) {
  return table.is_prime(x);
}

inline Exponent integer_valuation(const Integer& p, Integer n) {
  Exponent e = 0;
  n = abs(n);
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

/// p-adic valuation of a nonzero rational, returned as the power p^v.
inline PrimePower vp(const Integer& p, const Rational& x, const PrimeTable& table = default_primes()) {
  if (!table.is_prime(p)) throw Error(ErrorCode::NotPrime, p.str() + " is not prime");
  if (x.is_zero()) throw Error(ErrorCode::ZeroArgument, "valuation of zero");
  return {p, integer_valuation(p, x.num()) - integer_valuation(p, x.den())};
}

inline int sign(const Rational& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroArgument, "sign of zero");
  return x.signum();
}

inline SignedFactorization factor_embed(const Rational& x, const PrimeTable& table = default_primes()) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroArgument, "factorization of zero");
  SignedFactorization f;
  f.sign = x.signum();
  if (x.num() != 1 && x.num() != -1)
    for (auto& [p, e] : table.factor(x.num())) f.exps[p] += e;
  if (x.den() != 1)
    for (auto& [p, e] : table.factor(x.den())) f.exps[p] -= e;
  return f;
}

inline Rational factor_reconstruct(const SignedFactorization& f, const PrimeTable& table = default_primes()) {
  if (f.sign != 1 && f.sign != -1) throw Error(ErrorCode::MalformedFactorization, "sign must be +1 or -1");
  Integer num = 1;
  Integer den = 1;
  for (const auto& [p, e] : f.exps) {
    if (e == 0) throw Error(ErrorCode::MalformedFactorization, "zero exponent at " + p.str());
    if (!table.is_prime(p)) throw Error(ErrorCode::MalformedFactorization, p.str() + " is not prime");
    if (e > 0)
      num *= ipow(p, static_cast<std::uint64_t>(e));
    else
      den *= ipow(p, static_cast<std::uint64_t>(-e));
  }
  return Rational(f.sign * num, den);
}

/// Direct integrality test for N.
inline bool is_nat(const Rational& x) { return x.is_integer() && x.signum() >= 0; }

/// Lagrange witness (a, b, c, d) with a^2+b^2+c^2+d^2 = x, searching |a|..|d| <= bound.
inline std::optional<std::array<Integer, 4>> four_squares_witness(const Rational& x, const Integer& bound) {
  if (!x.is_integer() || x.signum() < 0) return std::nullopt;
  const Integer& n = x.num();
  Integer top = std::min(isqrt(n), bound);
  for (Integer a = top; a >= 0; --a) {
    Integer ra = n - a * a;
    for (Integer b = std::min(a, isqrt(ra)); b >= 0; --b) {
      Integer rb = ra - b * b;
      for (Integer c = std::min(b, isqrt(rb)); c >= 0; --c) {
        Integer rc = rb - c * c;
        auto d = exact_sqrt(rc);
        if (d && *d <= c) return std::array<Integer, 4>{a, b, c, *d};
        if (rc > c * c) break;
      }
    }
  }
  return std::nullopt;
}

inline bool is_nat_four_squares(const Rational& x, const Integer& bound) {
  return four_squares_witness(x, bound).has_value();
}

/// y in p^N (y = 1 or every nontrivial divisor of y is divisible by p).
inline bool is_prime_power(const Integer& p, const Integer& y, const PrimeTable& table = default_primes()) {
  if (!table.is_prime(p)) throw Error(ErrorCode::NotPrime, p.str() + " is not prime");
  if (y < 1) return false;
  Integer r = y;
  while (r % p == 0) r /= p;
  return r == 1;
}

/// pr(n): prime divisors of n; pr(+-1) is empty and pr(0) is ALL.
inline PrimeSet prime_factor_set(const Integer& n, const PrimeTable& table = default_primes()) {
  if (n == 0) return PrimeSet::all();
  std::vector<Integer> ps;
  if (n != 1 && n != -1)
    for (auto& kv : table.factor(n)) ps.push_back(kv.first);
  return PrimeSet(std::move(ps));
}

}  // namespace hyperarith
