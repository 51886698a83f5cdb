#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperarith/ideals/semigroup.hpp"
#include "hyperarith/valuation.hpp"

namespace hyperarith::ideals {

/// The ideal p^k R of R = Z localized at p.
struct ValuationIdeal {
  Integer p;
  std::size_t k = 1;
  friend bool operator==(const ValuationIdeal&, const ValuationIdeal&) = default;
};

/// S(I) = nu(I \ 0) inside the value semigroup (N, +), seen through the window.
/// Valuations are taken of actual elements p^k * p^j * u of I, with u a unit.
inline SubsemigroupTrunc S_of_I(const ValuationIdeal& ideal, std::size_t window) {
  if (!is_prime(ideal.p)) throw Error(ErrorCode::NotPrime, ideal.p.str() + " is not prime");
  if (ideal.k < 1) throw Error(ErrorCode::BadParameter, "ideal exponent must be at least 1");
  auto model = OrderedSemigroupModel::nat(window);
  std::vector<bool> in(model.size(), false);
  const Integer unit = ideal.p == 2 ? Integer(3) : Integer(2);
  Integer a = ipow(ideal.p, ideal.k);
  for (std::size_t j = 0; ideal.k + j <= window; ++j, a *= ideal.p) {
    for (const Integer& u : {unit, Integer(-1)}) {
      auto v = static_cast<std::size_t>(integer_valuation(ideal.p, a * u));
      if (v <= window) in[v] = true;
    }
  }
  return {model, std::move(in)};
}

/// I(T) = union of nu^-1([n, inf]) over n in T, which is p^(min T) R.
inline ValuationIdeal I_of_T(const SubsemigroupTrunc& t, const Integer& p) {
  auto lo = t.min();
  if (!lo) throw Error(ErrorCode::EmptySubsemigroup, "I(T) needs a nonempty T");
  if (*lo == 0) throw Error(ErrorCode::BadParameter, "T contains 0, so I(T) is the unit ideal");
  return {p, *lo};
}

struct CorrespondenceReport {
  std::size_t k_checked = 0;
  std::size_t subsets_checked = 0;
  std::optional<std::string> failure;
  bool pass() const { return !failure; }
};

/// I(S(p^k R)) = p^k R for 1 <= k <= kmax, injectivity of S, and
/// S(I(T)) = wrep_closure(T) for T generated by every nonempty subset of
/// {1..gen_limit}.
inline CorrespondenceReport correspondence_check(const Integer& p, std::size_t kmax, std::size_t window,
                                                 std::size_t gen_limit = 10) {
  if (window < kmax) throw Error(ErrorCode::BadParameter, "window must reach kmax");
  CorrespondenceReport r;
  std::vector<SubsemigroupTrunc> seen;
  for (std::size_t k = 1; k <= kmax && r.pass(); ++k) {
    ++r.k_checked;
    ValuationIdeal ideal{p, k};
    auto s = S_of_I(ideal, window);
    if (!is_wrep(s) || s.min() != k) r.failure = "S(I) is not [k, inf) for k=" + std::to_string(k);
    else if (!(I_of_T(s, p) == ideal)) r.failure = "I(S(I)) != I for k=" + std::to_string(k);
    for (const auto& prev : seen)
      if (prev == s) r.failure = "S is not injective at k=" + std::to_string(k);
    seen.push_back(s);
  }
  auto model = OrderedSemigroupModel::nat(window);
  for (std::uint32_t mask = 1; mask < (1U << gen_limit) && r.pass(); ++mask) {
    std::vector<std::size_t> gens;
    for (std::size_t a = 0; a < gen_limit; ++a)
      if (mask & (1U << a)) gens.push_back(a + 1);
    auto t = SubsemigroupTrunc::generated(model, gens);
    ++r.subsets_checked;
    auto lhs = S_of_I(I_of_T(t, p), window);
    if (!(lhs == wrep_closure(t))) r.failure = "S(I(T)) != wrep closure for generator mask " + std::to_string(mask);
  }
  return r;
}

}  // namespace hyperarith::ideals
