#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hyperarith/elliptic/torsion.hpp"

namespace hyperarith::elliptic {

/// Curated Mordell-Weil data: claimed free generators plus the full torsion subgroup.
struct MWData {
  Curve curve;
  std::vector<CurvePoint> generators;
  std::vector<CurvePoint> torsion;
  std::size_t claimed_rank = 0;
};

/// Checks everything checkable without descent; throws InvalidMWData.
inline void validate(const MWData& m) {
  if (m.claimed_rank != m.generators.size())
    throw Error(ErrorCode::InvalidMWData, "claimed rank differs from number of generators");
  for (const auto& g : m.generators) {
    if (!on_curve(m.curve, g)) throw Error(ErrorCode::InvalidMWData, "generator " + g.str() + " not on curve");
    if (point_order(m.curve, g, kMazurBound))
      throw Error(ErrorCode::InvalidMWData, "generator " + g.str() + " is torsion");
  }
  if (std::find(m.torsion.begin(), m.torsion.end(), CurvePoint::infinity()) == m.torsion.end())
    throw Error(ErrorCode::InvalidMWData, "torsion list lacks the point at infinity");
  auto in_torsion = [&](const CurvePoint& p) {
    return std::find(m.torsion.begin(), m.torsion.end(), p) != m.torsion.end();
  };
  for (const auto& t : m.torsion) {
    if (!on_curve(m.curve, t)) throw Error(ErrorCode::InvalidMWData, "torsion point " + t.str() + " not on curve");
    if (!in_torsion(neg(m.curve, t))) throw Error(ErrorCode::InvalidMWData, "torsion not closed under negation");
    for (const auto& s : m.torsion)
      if (!in_torsion(add(m.curve, t, s))) throw Error(ErrorCode::InvalidMWData, "torsion not closed under addition");
  }
  // Small relations sum c_i G_i in T with |c_i| <= 2. Not a proof of independence.
  const std::size_t r = m.generators.size();
  std::vector<int> c(r, -2);
  while (r > 0) {
    if (std::any_of(c.begin(), c.end(), [](int x) { return x != 0; })) {
      CurvePoint s = CurvePoint::infinity();
      for (std::size_t i = 0; i < r; ++i) s = add(m.curve, s, smul(m.curve, c[i], m.generators[i]));
      if (in_torsion(s)) throw Error(ErrorCode::InvalidMWData, "generators are dependent");
    }
    std::size_t i = 0;
    while (i < r && c[i] == 2) c[i++] = -2;
    if (i == r) break;
    ++c[i];
  }
}

inline MWData make_mw_data(Curve c, std::vector<CurvePoint> generators) {
  MWData m{c, std::move(generators), torsion_points(c), 0};
  m.claimed_rank = m.generators.size();
  validate(m);
  return m;
}

/// Coset representatives of T/nT in torsion-list order (first element of each coset).
inline std::vector<CurvePoint> torsion_quotient_reps(const Curve& c, const std::vector<CurvePoint>& torsion, int n) {
  std::vector<CurvePoint> ntors;
  for (const auto& t : torsion) ntors.push_back(smul(c, n, t));
  std::vector<CurvePoint> reps;
  for (const auto& t : torsion) {
    bool covered = false;
    for (const auto& r : reps) {
      CurvePoint diff = add(c, t, neg(c, r));
      if (std::find(ntors.begin(), ntors.end(), diff) != ntors.end()) {
        covered = true;
        break;
      }
    }
    if (!covered) reps.push_back(t);
  }
  return reps;
}

struct WeakMWQuotient {
  int n = 2;
  std::vector<CurvePoint> representatives;
  std::uint64_t cardinality = 0;
  std::uint64_t lower = 0;  // n^r
  std::uint64_t upper = 0;  // n^r + n^2
};

inline std::uint64_t upow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

/// E(Q)/nE(Q) from the claimed data: sum a_i G_i + T with 0 <= a_i < n and T over
/// T/nT representatives, ordered by coefficient vector then torsion index.
/// Enforces n^r <= |E/nE| <= n^r + n^2.
inline WeakMWQuotient weak_mw_quotient(const MWData& m, int n) {
  if (n < 2) throw Error(ErrorCode::BadParameter, "n must be at least 2");
  validate(m);
  const Curve& c = m.curve;
  auto treps = torsion_quotient_reps(c, m.torsion, n);
  const std::size_t r = m.generators.size();

  WeakMWQuotient q;
  q.n = n;
  std::vector<int> coeff(r, 0);
  for (;;) {
    CurvePoint base = CurvePoint::infinity();
    for (std::size_t i = 0; i < r; ++i)
      if (coeff[i] != 0) base = add(c, base, smul(c, coeff[i], m.generators[i]));
    for (const auto& t : treps) q.representatives.push_back(add(c, base, t));
    std::size_t i = r;
    while (i > 0 && coeff[i - 1] == n - 1) coeff[--i] = 0;
    if (i == 0) break;
    ++coeff[i - 1];
  }

  auto sorted = q.representatives;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::InvalidMWData, "representatives collide; generators are dependent");

  q.cardinality = q.representatives.size();
  q.lower = upow(static_cast<std::uint64_t>(n), r);
  q.upper = q.lower + static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  if (q.cardinality < q.lower || q.cardinality > q.upper)
    throw Error(ErrorCode::SandwichViolation, "|E/" + std::to_string(n) + "E| = " + std::to_string(q.cardinality) +
                                                  " outside [" + std::to_string(q.lower) + ", " +
                                                  std::to_string(q.upper) + "] on " + c.str());
  return q;
}

/// Classical bound |E/nE| <= n^r * |E[n](Q)|, for comparison with the sandwich.
inline std::uint64_t classical_upper_bound(const MWData& m, int n) {
  std::uint64_t tors_n = 0;
  for (const auto& t : m.torsion)
    if (smul(m.curve, n, t).is_infinity()) ++tors_n;
  return upow(static_cast<std::uint64_t>(n), m.generators.size()) * tors_n;
}

/// Dataset-scale shadow of "bounded ranks <=> bounded |E/2E|".
struct RankBoundFragment {
  std::size_t max_rank = 0;
  std::uint64_t max_weak2 = 0;
  bool ranks_bound_weak2 = true;   // every |E/2E| <= 2^{r_max} * 4
  bool weak2_bounds_ranks = true;  // every r <= log2(max |E/2E|)
};

inline RankBoundFragment rank_bound_fragment(const std::vector<MWData>& data) {
  RankBoundFragment f;
  std::vector<std::uint64_t> sizes;
  for (const auto& m : data) {
    f.max_rank = std::max(f.max_rank, m.generators.size());
    sizes.push_back(weak_mw_quotient(m, 2).cardinality);
    f.max_weak2 = std::max(f.max_weak2, sizes.back());
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (sizes[i] > upow(2, f.max_rank) * 4) f.ranks_bound_weak2 = false;
    if (upow(2, data[i].generators.size()) > f.max_weak2) f.weak2_bounds_ranks = false;
  }
  return f;
}

}  // namespace hyperarith::elliptic
