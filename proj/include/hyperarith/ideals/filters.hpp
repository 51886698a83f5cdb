#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperarith/valuation.hpp"

namespace hyperarith::ideals {

/// Ideal (g) of Z with canonical generator g >= 0.
struct FGIdeal {
  Integer generator;

  explicit FGIdeal(const Integer& g) : generator(abs(g)) {}
  /// (a) + (b) = (gcd(a, b)).
  static FGIdeal generated_by(const std::vector<Integer>& gens) {
    Integer g = 0;
    for (const auto& x : gens) g = gcd(g, x);
    return FGIdeal(g);
  }

  bool contains(const Integer& n) const { return generator == 0 ? n == 0 : n % generator == 0; }
  bool is_subset_of(const FGIdeal& o) const { return o.contains(generator); }
  friend bool operator==(const FGIdeal&, const FGIdeal&) = default;
};

/// Filter on sets of primes generated by a finite base. A finite base has a
/// least member, the intersection Q of the base, so the filter is {S : Q in S}.
class FilterDesc {
 public:
  explicit FilterDesc(std::vector<PrimeSet> base, std::optional<Integer> principal_of = std::nullopt)
      : base_(std::move(base)), principal_of_(std::move(principal_of)) {
    if (base_.empty()) throw Error(ErrorCode::EmptyBase, "filter base is empty");
    core_ = base_.front();
    for (const auto& s : base_) core_ = core_.intersect(s);
    if (core_.empty()) throw Error(ErrorCode::EmptyBase, "base intersection is empty, so the empty set would be a member");
  }

  /// F(n) = {S : pr(n) in S}, for n not a unit.
  static FilterDesc principal(const Integer& n) {
    return FilterDesc({prime_factor_set(n)}, abs(n));
  }

  const std::vector<PrimeSet>& base() const noexcept { return base_; }
  const PrimeSet& core() const noexcept { return core_; }
  const std::optional<Integer>& principal_of() const noexcept { return principal_of_; }

  bool contains(const PrimeSet& s) const { return core_.is_subset_of(s); }
  bool is_subset_of(const FilterDesc& o) const { return o.contains(core_); }

 private:
  std::vector<PrimeSet> base_;
  std::optional<Integer> principal_of_;
  PrimeSet core_;
};

/// F(I) = {pr(n) : n in I}. Throws UnitIdeal for I = (1).
inline FilterDesc filter_of_ideal(const FGIdeal& i) {
  if (i.generator == 1) throw Error(ErrorCode::UnitIdeal, "F((1)) would contain the empty set");
  return FilterDesc::principal(i.generator);
}

/// I(F) = {n : pr(n) in F}, generated by the product of the primes in Q.
inline FGIdeal ideal_of_filter(const FilterDesc& f) {
  if (f.core().is_all()) return FGIdeal(0);
  Integer g = 1;
  for (const auto& p : f.core().primes()) g *= p;
  return FGIdeal(g);
}

/// Principal filters generated by a single prime are maximal.
inline bool is_maximal_principal_filter(const FilterDesc& f) {
  if (!f.principal_of()) throw Error(ErrorCode::NotPrincipal, "filter was not built as F(n)");
  return !f.core().is_all() && f.core().primes().size() == 1;
}

/// Outcome of one clause of the ideal/filter correspondence.
struct ClauseResult {
  std::string name;
  bool pass = true;
  std::optional<Integer> counterexample;
};

struct GaloisReport {
  std::vector<ClauseResult> clauses;
  std::optional<Integer> strictness_witness;  // least positive n in I(F(I)) \ I

  bool pass() const {
    for (const auto& c : clauses)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

// pr(n) for 1 <= n <= bound from a smallest-prime-factor table.
class SmallFactorSets {
 public:
  explicit SmallFactorSets(std::uint64_t bound) : spf_(bound + 1, 0) {
    for (std::uint64_t i = 2; i <= bound; ++i)
      if (spf_[i] == 0)
        for (std::uint64_t j = i; j <= bound; j += i)
          if (spf_[j] == 0) spf_[j] = i;
  }
  std::uint64_t bound() const { return spf_.size() - 1; }
  PrimeSet of(std::uint64_t n) const {
    std::vector<Integer> ps;
    while (n > 1) {
      std::uint64_t p = spf_[n];
      ps.emplace_back(p);
      while (n % p == 0) n /= p;
    }
    return PrimeSet(std::move(ps));
  }

 private:
  std::vector<std::uint64_t> spf_;
};

inline std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Checks the five clauses of the correspondence between ideals and filters
/// for I = (g), g >= 2, and a filter F, scanning elements 1..bound.
/// Monotonicity is tested against every ideal containing I and every filter
/// containing F that the finite data determines.
inline GaloisReport galois_checks(const FGIdeal& ideal, const FilterDesc& filt, std::uint64_t bound = 1000) {
  if (ideal.generator < 2) throw Error(ErrorCode::BadParameter, "galois_checks needs a proper nonzero ideal");
  static thread_local std::optional<detail::SmallFactorSets> table;
  if (!table || table->bound() < bound) table.emplace(bound);
  auto pr = [&](std::uint64_t n) { return table->of(n); };

  GaloisReport rep;
  const FilterDesc fi = filter_of_ideal(ideal);
  const FGIdeal ifilt = ideal_of_filter(filt);

  // (1) F(I) is a filter: no empty member, closed under meets with other
  // members, closed upward (pr(a c) contains pr(a)).
  ClauseResult c1{"F(I) is a filter"};
  const std::uint64_t g = static_cast<std::uint64_t>(ideal.generator <= bound ? ideal.generator : Integer(bound + 1));
  for (std::uint64_t a = g; a <= bound && c1.pass; a += g) {
    PrimeSet pa = pr(a);
    if (pa.empty() || !fi.contains(pa)) c1 = {c1.name, false, Integer(a)};
    for (std::uint64_t b = g; b <= std::min(bound, 8 * g) && c1.pass; b += g)
      if (!fi.contains(pa.intersect(pr(b)))) c1 = {c1.name, false, Integer(b)};
    for (std::uint64_t c : {2, 3, 5, 7, 11})
      if (c1.pass && a * c <= bound && !fi.contains(pr(a * c))) c1 = {c1.name, false, Integer(a * c)};
  }
  rep.clauses.push_back(c1);

  // (2) I(F) is the ideal generated by the radical element prod(Q).
  ClauseResult c2{"I(F) is generated by the radical element"};
  if (!filt.core().is_all()) {
    for (std::uint64_t n = 1; n <= bound; ++n)
      if (filt.contains(pr(n)) != ifilt.contains(n)) {
        c2 = {c2.name, false, Integer(n)};
        break;
      }
  }
  rep.clauses.push_back(c2);

  // (3) I in J implies F(I) in F(J), over the ideals J = (d) with d | g, d > 1.
  ClauseResult c3{"I1 in I2 implies F(I1) in F(I2)"};
  for (const auto& d : detail::positive_divisors(ideal.generator)) {
    if (d == 1) continue;
    FilterDesc fj = filter_of_ideal(FGIdeal(d));
    for (std::uint64_t a = g; a <= bound; a += g)
      if (!fj.contains(pr(a))) {
        c3 = {c3.name, false, Integer(a)};
        break;
      }
    if (!c3.pass) break;
  }
  rep.clauses.push_back(c3);

  // (4) F1 in F2 implies I(F1) in I(F2), over the filters generated by nonempty subsets of Q.
  ClauseResult c4{"F1 in F2 implies I(F1) in I(F2)"};
  if (!filt.core().is_all()) {
    const auto& q = filt.core().primes();
    if (q.size() > 16) throw Error(ErrorCode::BadParameter, "filter core too large to enumerate");
    for (std::uint32_t mask = 1; mask < (1U << q.size()) && c4.pass; ++mask) {
      std::vector<Integer> sub;
      for (std::size_t k = 0; k < q.size(); ++k)
        if (mask & (1U << k)) sub.push_back(q[k]);
      FilterDesc f2({PrimeSet(sub)});
      if (!filt.is_subset_of(f2)) {
        c4 = {c4.name, false, std::nullopt};
        break;
      }
      FGIdeal i2 = ideal_of_filter(f2);
      if (ifilt.generator > bound) continue;
      const auto step = static_cast<std::uint64_t>(ifilt.generator);
      for (std::uint64_t n = step; n <= bound; n += step)
        if (!i2.contains(n)) {
          c4 = {c4.name, false, Integer(n)};
          break;
        }
    }
  }
  rep.clauses.push_back(c4);

  // (5) I in I(F(I)) and F in F(I(F)).
  ClauseResult c5{"I in I(F(I)) and F in F(I(F))"};
  const FGIdeal back = ideal_of_filter(fi);
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (ideal.contains(n) && !back.contains(n)) {
      c5 = {c5.name, false, Integer(n)};
      break;
    }
    if (!rep.strictness_witness && back.contains(n) && !ideal.contains(n)) rep.strictness_witness = Integer(n);
  }
  if (c5.pass && ifilt.generator != 1 && !filt.is_subset_of(filter_of_ideal(ifilt))) c5 = {c5.name, false, std::nullopt};
  rep.clauses.push_back(c5);
  return rep;
}

}  // namespace hyperarith::ideals
