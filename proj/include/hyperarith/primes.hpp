#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hyperarith/rational.hpp"

namespace hyperarith {

/// Deterministic Miller-Rabin is only claimed below this bound.
inline constexpr std::uint64_t kMillerRabinLimit = 330'000'000'000'000ULL;

inline constexpr std::uint64_t kDefaultSieveBound = 1'000'000;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

// Bases 2..17 are a deterministic witness set for n < 341550071728321.
inline bool miller_rabin(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// Sieve of Eratosthenes up to a fixed bound, used for trial division.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t bound = kDefaultSieveBound) : bound_(bound), composite_(bound + 1, false) {
    if (bound < 2) throw Error(ErrorCode::BadParameter, "sieve bound must be at least 2");
    composite_[0] = composite_[1] = true;
    for (std::uint64_t i = 2; i * i <= bound; ++i) {
      if (composite_[i]) continue;
      for (std::uint64_t j = i * i; j <= bound; j += i) composite_[j] = true;
    }
    for (std::uint64_t i = 2; i <= bound; ++i)
      if (!composite_[i]) primes_.push_back(i);
  }

  std::uint64_t bound() const noexcept { return bound_; }
  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }

  /// True iff x is a positive prime. Throws OutOfRange past the Miller-Rabin limit.
  bool is_prime(const Integer& x) const {
    if (x < 2) return false;
    if (x <= bound_) return !composite_[static_cast<std::uint64_t>(x)];
    if (x >= kMillerRabinLimit)
      throw Error(ErrorCode::OutOfRange, "primality of " + x.str() + " exceeds the deterministic range");
    return detail::miller_rabin(static_cast<std::uint64_t>(x));
  }

  /// Prime -> exponent for |n|, n != 0. Throws OutOfRange if a cofactor cannot be certified.
  std::map<Integer, std::int64_t> factor(Integer n) const {
    if (n == 0) throw Error(ErrorCode::ZeroArgument, "factor of zero");
    n = abs(n);
    std::map<Integer, std::int64_t> out;
    for (std::uint64_t p : primes_) {
      Integer pp = p;
      if (pp * pp > n) break;
      if (n % p != 0) continue;
      std::int64_t e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace(pp, e);
    }
    if (n > 1) {
      Integer b = bound_;
      if (n > b * b && !is_prime(n))
        throw Error(ErrorCode::OutOfRange, "cofactor " + n.str() + " has no factor below the sieve bound");
      out.emplace(n, 1);
    }
    return out;
  }

 private:
  std::uint64_t bound_;
  std::vector<bool> composite_;
  std::vector<std::uint64_t> primes_;
};

/// Shared table at the default bound; built once, read-only afterwards.
inline const PrimeTable& default_primes() {
  static const PrimeTable table(kDefaultSieveBound);
  return table;
}

/// The i-th prime, 0-based (nth_prime(0) = 2).
inline std::uint64_t nth_prime(std::uint64_t i) {
  const auto& ps = default_primes().primes();
  if (i < ps.size()) return ps[i];
  std::uint64_t k = ps.size() - 1;
  std::uint64_t c = ps.back();
  while (k < i) {
    c += 2;
    if (detail::miller_rabin(c)) ++k;
  }
  return c;
}

}  // namespace hyperarith
