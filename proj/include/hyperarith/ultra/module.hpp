#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "hyperarith/ultra/seq_expr.hpp"

namespace hyperarith::ultra {

/// The product of the cyclic groups Z/m_i, one per index.
class CyclicModuleSeq {
 public:
  explicit CyclicModuleSeq(SeqExpr moduli) : moduli_(std::move(moduli)) {}

  const SeqExpr& moduli() const noexcept { return moduli_; }

  Integer modulus_at(Index i) const {
    Integer m = eval(moduli_, i);
    if (m < 1) throw Error(ErrorCode::BadParameter, "modulus " + m.str() + " at index " + std::to_string(i) + " is below 1");
    return m;
  }

  /// Component of an element at index i, in [0, m_i).
  Integer component(const SeqExpr& a, Index i) const {
    Integer m = modulus_at(i);
    Integer v = eval(a, i) % m;
    return v < 0 ? v + m : v;
  }

  SeqExpr add(const SeqExpr& a, const SeqExpr& b) const { return seq_add(a, b); }

 private:
  SeqExpr moduli_;
};

/// The action (n_i) . (a_i) = (n_i a_i).
inline SeqExpr module_action(const SeqExpr& n, const SeqExpr& a) { return seq_mul(n, a); }

struct QuotientReport {
  std::uint64_t bound = 0;  // k^(number of generators)
  std::uint64_t max_observed = 0;
  std::vector<std::uint64_t> sizes;  // |A_i / k A_i| for i = 0..trunc
  bool ok = true;
  Index first_violation = 0;
};

namespace detail {

// |Z/m / k(Z/m)| by walking the orbit of k.
inline std::uint64_t cyclic_quotient_size(std::uint64_t m, std::uint64_t k) {
  std::uint64_t step = k % m;
  std::uint64_t x = step;
  std::uint64_t orbit = 1;
  while (x != 0) {
    x = (x + step) % m;
    ++orbit;
  }
  return m / orbit;
}

}  // namespace detail

/// Brute-force |A_i / k A_i| <= k^n at every index up to trunc, where n is the
/// number of generators. Throws NotGenerating at the first index where the
/// generators miss part of Z/m_i.
inline QuotientReport quotient_bound_check(const CyclicModuleSeq& mod, const std::vector<SeqExpr>& gens, std::uint64_t k,
                                           Index trunc) {
  if (k < 1) throw Error(ErrorCode::BadParameter, "k must be at least 1");
  QuotientReport r;
  r.bound = 1;
  for (std::size_t j = 0; j < gens.size(); ++j) r.bound *= k;
  for (Index i = 0; i <= trunc; ++i) {
    Integer m = mod.modulus_at(i);
    if (m > Integer(std::uint64_t{1} << 32)) throw Error(ErrorCode::OutOfRange, "modulus too large for brute force");
    Integer g = m;
    for (const auto& a : gens) g = gcd(g, mod.component(a, i));
    if (g != 1) throw Error(ErrorCode::NotGenerating, "generators miss part of Z/" + m.str() + " at index " + std::to_string(i));
    std::uint64_t size = detail::cyclic_quotient_size(static_cast<std::uint64_t>(m), k);
    r.sizes.push_back(size);
    r.max_observed = std::max(r.max_observed, size);
    if (size > r.bound && r.ok) {
      r.ok = false;
      r.first_violation = i;
    }
  }
  return r;
}

}  // namespace hyperarith::ultra
