#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hyperarith/ultra/periodic_set.hpp"

namespace hyperarith::ultra {

/// Membership oracle for an ultrafilter on N, answering for eventually
/// periodic sets only. Stateful: serialize calls on one instance.
class UltrafilterOracle {
 public:
  enum class Kind { Principal, LazyGeneric };

  static UltrafilterOracle principal(Index i0) { return UltrafilterOracle(Kind::Principal, i0); }
  /// Nonprincipal: extends the cofinite filter and commits to ever finer residue classes.
  static UltrafilterOracle lazy_generic() { return UltrafilterOracle(Kind::LazyGeneric, 0); }

  Kind kind() const noexcept { return kind_; }
  Index point() const noexcept { return a_; }
  std::pair<Index, Index> commitment() const noexcept { return {a_, m_}; }
  const std::vector<std::pair<PeriodicSet, bool>>& decisions() const noexcept { return log_; }

  bool decides(const PeriodicSet& s) {
    bool answer = kind_ == Kind::Principal ? s.member(a_) : lazy(s);
    if (kind_ == Kind::LazyGeneric) log_.emplace_back(s, answer);
    return answer;
  }

  nlohmann::ordered_json log_json() const {
    nlohmann::ordered_json j;
    j["commitment"] = {a_, m_};
    auto d = nlohmann::ordered_json::array();
    for (const auto& [s, b] : log_) d.push_back({s.to_json(), b});
    j["decisions"] = d;
    return j;
  }

  /// Replays a log on a fresh LazyGeneric oracle; throws OracleReplayMismatch
  /// if any answer or the final commitment differs.
  static UltrafilterOracle replay(const nlohmann::ordered_json& log) {
    UltrafilterOracle o = lazy_generic();
    try {
      std::size_t k = 0;
      for (const auto& entry : log.at("decisions")) {
        PeriodicSet s = PeriodicSet::from_json(entry.at(0));
        bool want = entry.at(1).get<bool>();
        if (o.decides(s) != want)
          throw Error(ErrorCode::OracleReplayMismatch, "decision " + std::to_string(k) + " differs on replay");
        ++k;
      }
      auto c = log.at("commitment").get<std::vector<Index>>();
      if (c.size() != 2 || c[0] != o.a_ || c[1] != o.m_)
        throw Error(ErrorCode::OracleReplayMismatch, "final commitment differs on replay");
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::OracleReplayMismatch, std::string("malformed log: ") + e.what());
    }
    return o;
  }

 private:
  UltrafilterOracle(Kind k, Index a) : kind_(k), a_(a) {}

  bool lazy(const PeriodicSet& s) {
    if (s.is_finite()) return false;
    if (s.is_cofinite()) return true;
    const Index sm = s.modulus();
    const Index g = std::gcd(m_, sm);
    if (m_ / g > std::numeric_limits<Index>::max() / sm)
      throw Error(ErrorCode::OutOfRange, "commitment modulus overflows");
    const Index l = m_ / g * sm;
    // Classes a + j*m mod l refine the commitment; the smallest one inside s wins.
    for (Index j = 0; j < l / m_; ++j) {
      Index r = a_ + j * m_;
      if (s.periodic_member(r)) {
        a_ = r;
        m_ = l;
        return true;
      }
    }
    m_ = l;
    return false;
  }

  Kind kind_;
  Index a_;
  Index m_ = 1;
  std::vector<std::pair<PeriodicSet, bool>> log_;
};

}  // namespace hyperarith::ultra
