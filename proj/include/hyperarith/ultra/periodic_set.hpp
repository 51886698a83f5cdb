#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "hyperarith/errors.hpp"

namespace hyperarith::ultra {

using Index = std::uint64_t;

/// Residue vectors longer than this are refused rather than allocated.
inline constexpr Index kMaxModulus = Index{1} << 20;

/// Eventually periodic subset of N: the union of residue classes mod m, plus
/// finitely many inserted indices, minus finitely many removed ones.
/// Always held in canonical form (minimal modulus, exceptions reduced).
class PeriodicSet {
 public:
  PeriodicSet() : PeriodicSet(1, {false}, {}, {}) {}

  PeriodicSet(Index modulus, std::vector<bool> residues, std::set<Index> plus, std::set<Index> minus)
      : m_(modulus), res_(std::move(residues)) {
    if (m_ == 0 || res_.size() != m_) throw Error(ErrorCode::BadParameter, "residue vector must have modulus length");
    if (m_ > kMaxModulus) throw Error(ErrorCode::OutOfRange, "modulus " + std::to_string(m_) + " too large");
    for (Index i : plus)
      if (!res_[i % m_]) plus_.insert(i);
    for (Index i : minus)
      if (res_[i % m_] && !plus.contains(i)) minus_.insert(i);
    canonicalize();
  }

  static PeriodicSet empty() { return {}; }
  static PeriodicSet all() { return {1, {true}, {}, {}}; }
  static PeriodicSet finite(std::set<Index> xs) { return {1, {false}, std::move(xs), {}}; }
  static PeriodicSet residue_class(Index a, Index m) {
    if (m == 0) throw Error(ErrorCode::BadParameter, "modulus must be positive");
    std::vector<bool> r(m, false);
    r[a % m] = true;
    return {m, std::move(r), {}, {}};
  }
  /// {i : i >= n}.
  static PeriodicSet from(Index n) {
    std::set<Index> minus;
    for (Index i = 0; i < n; ++i) minus.insert(i);
    return {1, {true}, {}, std::move(minus)};
  }

  Index modulus() const noexcept { return m_; }
  const std::vector<bool>& residues() const noexcept { return res_; }
  const std::set<Index>& inserted() const noexcept { return plus_; }
  const std::set<Index>& removed() const noexcept { return minus_; }

  bool periodic_member(Index i) const { return res_[i % m_]; }
  bool member(Index i) const { return plus_.contains(i) || (res_[i % m_] && !minus_.contains(i)); }

  bool is_finite() const { return std::none_of(res_.begin(), res_.end(), [](bool b) { return b; }); }
  bool is_cofinite() const { return std::all_of(res_.begin(), res_.end(), [](bool b) { return b; }); }
  bool is_empty() const { return is_finite() && plus_.empty(); }
  bool is_all() const { return is_cofinite() && minus_.empty(); }

  PeriodicSet complement() const {
    std::vector<bool> r(m_);
    for (Index k = 0; k < m_; ++k) r[k] = !res_[k];
    return {m_, std::move(r), minus_, plus_};
  }

  friend PeriodicSet unite(const PeriodicSet& a, const PeriodicSet& b) {
    return combine(a, b, [](bool x, bool y) { return x || y; });
  }
  friend PeriodicSet intersect(const PeriodicSet& a, const PeriodicSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && y; });
  }
  friend bool subset(const PeriodicSet& a, const PeriodicSet& b) { return intersect(a, b.complement()).is_empty(); }

  friend bool operator==(const PeriodicSet&, const PeriodicSet&) = default;

  /// Sets the membership of a single index.
  PeriodicSet with(Index i, bool in) const {
    auto plus = plus_;
    auto minus = minus_;
    plus.erase(i);
    minus.erase(i);
    if (in && !res_[i % m_]) plus.insert(i);
    if (!in && res_[i % m_]) minus.insert(i);
    return {m_, res_, std::move(plus), std::move(minus)};
  }

  /// Largest exceptional index plus one; past it membership is purely periodic.
  Index threshold() const {
    Index t = 0;
    if (!plus_.empty()) t = std::max(t, *plus_.rbegin() + 1);
    if (!minus_.empty()) t = std::max(t, *minus_.rbegin() + 1);
    return t;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["modulus"] = m_;
    std::vector<Index> r;
    for (Index k = 0; k < m_; ++k)
      if (res_[k]) r.push_back(k);
    j["residues"] = r;
    j["plus"] = std::vector<Index>(plus_.begin(), plus_.end());
    j["minus"] = std::vector<Index>(minus_.begin(), minus_.end());
    return j;
  }

  static PeriodicSet from_json(const nlohmann::ordered_json& j) {
    try {
      Index m = j.at("modulus").get<Index>();
      if (m == 0 || m > kMaxModulus) throw Error(ErrorCode::BadParameter, "bad modulus in set");
      std::vector<bool> r(m, false);
      for (Index k : j.at("residues").get<std::vector<Index>>()) {
        if (k >= m) throw Error(ErrorCode::BadParameter, "residue out of range");
        r[k] = true;
      }
      auto plus = j.at("plus").get<std::vector<Index>>();
      auto minus = j.at("minus").get<std::vector<Index>>();
      PeriodicSet s(m, std::move(r), {plus.begin(), plus.end()}, {minus.begin(), minus.end()});
      // key order is irrelevant; the content must already be canonical
      if (nlohmann::json::parse(s.to_json().dump()) != nlohmann::json::parse(j.dump()))
        throw Error(ErrorCode::BadParameter, "set is not in canonical form");
      return s;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadParameter, std::string("malformed set: ") + e.what());
    }
  }

  std::string str() const { return to_json().dump(); }

 private:
  template <class Op>
  static PeriodicSet combine(const PeriodicSet& a, const PeriodicSet& b, Op op) {
    Index l = std::lcm(a.m_, b.m_);
    if (l > kMaxModulus) throw Error(ErrorCode::OutOfRange, "combined modulus too large");
    std::vector<bool> r(l);
    for (Index k = 0; k < l; ++k) r[k] = op(a.res_[k % a.m_], b.res_[k % b.m_]);
    std::set<Index> plus;
    std::set<Index> minus;
    std::set<Index> exc;
    for (const auto* s : {&a.plus_, &a.minus_, &b.plus_, &b.minus_}) exc.insert(s->begin(), s->end());
    for (Index i : exc) {
      bool actual = op(a.member(i), b.member(i));
      if (actual && !r[i % l]) plus.insert(i);
      if (!actual && r[i % l]) minus.insert(i);
    }
    return {l, std::move(r), std::move(plus), std::move(minus)};
  }

  void canonicalize() {
    // Smallest divisor d of m for which the residue pattern has period d.
    for (Index d = 1; d < m_; ++d) {
      if (m_ % d != 0) continue;
      bool ok = true;
      for (Index k = d; k < m_ && ok; ++k) ok = res_[k] == res_[k % d];
      if (ok) {
        res_.resize(d);
        m_ = d;
        break;
      }
    }
  }

  Index m_;
  std::vector<bool> res_;
  std::set<Index> plus_;
  std::set<Index> minus_;
};

}  // namespace hyperarith::ultra
