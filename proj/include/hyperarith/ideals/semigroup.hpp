#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperarith/rational.hpp"

namespace hyperarith::ideals {

/// A truncation window of an ordered semigroup. Elements are numbered 0..N in
/// increasing order:
///   Nat        j       under +
///   NonNegRat  j/den   under +   (the grid (1/den)N inside Q>=0)
///   PPower     p^j     under *
/// Products that leave the window are reported as absent, never wrapped.
class OrderedSemigroupModel {
 public:
  enum class Kind { Nat, NonNegRat, PPower };

  static OrderedSemigroupModel nat(std::size_t window) { return {Kind::Nat, window, 1, 1}; }
  static OrderedSemigroupModel nonnegrat(std::size_t window, std::uint64_t den) {
    if (den < 1) throw Error(ErrorCode::BadParameter, "grid denominator must be positive");
    return {Kind::NonNegRat, window, den, 1};
  }
  static OrderedSemigroupModel ppower(std::uint64_t p, std::size_t window) {
    if (p < 2) throw Error(ErrorCode::BadParameter, "p must be at least 2");
    return {Kind::PPower, window, 1, p};
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t window() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ + 1; }
  std::uint64_t den() const noexcept { return den_; }
  std::uint64_t p() const noexcept { return p_; }

  /// The product of two elements, if it lies in the window.
  std::optional<std::size_t> op(std::size_t a, std::size_t b) const {
    std::size_t c = a + b;  // exponents add under *, numerators add under +
    if (c > n_) return std::nullopt;
    return c;
  }

  /// y^k for k >= 1, if it lies in the window.
  std::optional<std::size_t> power(std::size_t y, std::size_t k) const {
    std::optional<std::size_t> acc = y;
    for (std::size_t j = 1; j < k && acc; ++j) acc = op(*acc, y);
    return acc;
  }

  bool is_identity(std::size_t a) const { return a == 0; }

  std::string label(std::size_t j) const {
    switch (kind_) {
      case Kind::Nat: return std::to_string(j);
      case Kind::NonNegRat: return Rational(Integer(j), Integer(den_)).str();
      case Kind::PPower: return ipow(Integer(p_), j).str();
    }
    return {};
  }

  /// Element index from its printed value; throws WindowOverflow past the window.
  std::size_t index_of(const std::string& text) const {
    Rational v = Rational::parse(text);
    if (v.signum() < 0) throw Error(ErrorCode::BadParameter, "negative element " + text);
    Integer j;
    switch (kind_) {
      case Kind::Nat:
        if (!v.is_integer()) throw Error(ErrorCode::BadParameter, text + " is not a natural number");
        j = v.num();
        break;
      case Kind::NonNegRat: {
        Rational s = v * Rational(Integer(den_));
        if (!s.is_integer()) throw Error(ErrorCode::BadParameter, text + " is off the 1/" + std::to_string(den_) + " grid");
        j = s.num();
        break;
      }
      case Kind::PPower: {
        if (!v.is_integer() || v.is_zero()) throw Error(ErrorCode::BadParameter, text + " is not a power of p");
        Integer x = v.num();
        j = 0;
        while (x % p_ == 0) {
          x /= p_;
          ++j;
        }
        if (x != 1) throw Error(ErrorCode::BadParameter, text + " is not a power of " + std::to_string(p_));
        break;
      }
    }
    if (j > n_) throw Error(ErrorCode::WindowOverflow, text + " lies outside the window");
    return static_cast<std::size_t>(j);
  }

  friend bool operator==(const OrderedSemigroupModel&, const OrderedSemigroupModel&) = default;

 private:
  OrderedSemigroupModel(Kind k, std::size_t n, std::uint64_t den, std::uint64_t p) : kind_(k), n_(n), den_(den), p_(p) {}

  Kind kind_;
  std::size_t n_;
  std::uint64_t den_;
  std::uint64_t p_;
};

/// A subsemigroup seen through the window: closed under products that stay inside.
class SubsemigroupTrunc {
 public:
  SubsemigroupTrunc(OrderedSemigroupModel model, std::vector<bool> members)
      : model_(std::move(model)), in_(std::move(members)) {
    if (in_.size() != model_.size()) throw Error(ErrorCode::BadParameter, "membership vector has the wrong length");
    for (std::size_t a = 0; a < in_.size(); ++a)
      for (std::size_t b = 0; b < in_.size(); ++b)
        if (in_[a] && in_[b]) {
          auto c = model_.op(a, b);
          if (c && !in_[*c])
            throw Error(ErrorCode::BadParameter, "not closed: " + model_.label(a) + " . " + model_.label(b));
        }
  }

  /// The subsemigroup generated by the given elements, within the window.
  static SubsemigroupTrunc generated(const OrderedSemigroupModel& m, const std::vector<std::size_t>& elems) {
    std::vector<bool> in(m.size(), false);
    std::vector<std::size_t> members;
    std::vector<std::size_t> todo;
    for (auto e : elems) {
      if (e >= m.size()) throw Error(ErrorCode::WindowOverflow, "element outside the window");
      if (!in[e]) todo.push_back(e);
      in[e] = true;
    }
    while (!todo.empty()) {
      std::size_t a = todo.back();
      todo.pop_back();
      members.push_back(a);
      for (std::size_t j = 0; j < members.size(); ++j)
        for (auto c : {m.op(a, members[j]), m.op(members[j], a)})
          if (c && !in[*c]) {
            in[*c] = true;
            todo.push_back(*c);
          }
    }
    return SubsemigroupTrunc(m, std::move(in), Closed{});
  }

  const OrderedSemigroupModel& model() const noexcept { return model_; }
  const std::vector<bool>& members() const noexcept { return in_; }
  bool contains(std::size_t a) const { return a < in_.size() && in_[a]; }
  bool empty() const {
    for (bool b : in_)
      if (b) return false;
    return true;
  }
  std::optional<std::size_t> min() const {
    for (std::size_t a = 0; a < in_.size(); ++a)
      if (in_[a]) return a;
    return std::nullopt;
  }
  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < in_.size(); ++a)
      if (in_[a]) out.push_back(a);
    return out;
  }

  /// True if the untruncated subsemigroup has members past the window.
  bool escapes() const {
    for (std::size_t a = 0; a < in_.size(); ++a)
      for (std::size_t b = a; b < in_.size(); ++b)
        if (in_[a] && in_[b] && !model_.op(a, b)) return true;
    return false;
  }

  friend bool operator==(const SubsemigroupTrunc&, const SubsemigroupTrunc&) = default;

 private:
  struct Closed {};
  SubsemigroupTrunc(OrderedSemigroupModel model, std::vector<bool> members, Closed)
      : model_(std::move(model)), in_(std::move(members)) {}

  OrderedSemigroupModel model_;
  std::vector<bool> in_;
};

inline bool is_convex(const SubsemigroupTrunc& t) {
  auto e = t.elements();
  if (e.empty()) return true;
  for (std::size_t s = e.front(); s <= e.back(); ++s)
    if (!t.contains(s)) return false;
  return true;
}

/// Convex and upward closed (within the window).
inline bool is_wrep(const SubsemigroupTrunc& t) {
  auto lo = t.min();
  if (!lo) return true;
  for (std::size_t s = *lo; s < t.model().size(); ++s)
    if (!t.contains(s)) return false;
  return true;
}

/// Smallest convex subsemigroup containing t. When t reaches past the window
/// the hull runs to the window's end.
inline SubsemigroupTrunc convex_hull(const SubsemigroupTrunc& t) {
  SubsemigroupTrunc cur = t;
  for (;;) {
    auto e = cur.elements();
    if (e.empty()) return cur;
    std::size_t top = cur.escapes() ? cur.model().window() : e.back();
    std::vector<std::size_t> fill;
    for (std::size_t s = e.front(); s <= top; ++s) fill.push_back(s);
    SubsemigroupTrunc next = SubsemigroupTrunc::generated(cur.model(), fill);
    if (next == cur) return cur;
    cur = next;
  }
}

/// Smallest subsemigroup without right end point containing t.
inline SubsemigroupTrunc wrep_closure(const SubsemigroupTrunc& t) {
  auto h = convex_hull(t);
  auto lo = h.min();
  if (!lo) return h;
  std::vector<std::size_t> up;
  for (std::size_t s = *lo; s < h.model().size(); ++s) up.push_back(s);
  return SubsemigroupTrunc::generated(h.model(), up);
}

/// Roots of members are members. Witness: (x, y, k) with y^k = x, x in T, y not;
/// the least x, then its largest missing root.
inline std::pair<bool, std::optional<std::array<std::size_t, 3>>> radical_check(const SubsemigroupTrunc& t) {
  const auto& m = t.model();
  for (std::size_t x = 0; x < m.size(); ++x) {
    if (!t.contains(x)) continue;
    for (std::size_t y = x + 1; y-- > 0;)
      for (std::size_t k = 1; k < m.size() + 1; ++k) {
        auto p = m.power(y, k);
        if (!p || *p > x) break;
        if (*p == x && !t.contains(y)) return {false, std::array<std::size_t, 3>{x, y, k}};
        if (m.is_identity(y)) break;
      }
  }
  return {true, std::nullopt};
}

/// ab in T forces a or b in T. Witness (a, b) with a <= b, searched by
/// increasing b, then decreasing a.
inline std::pair<bool, std::optional<std::pair<std::size_t, std::size_t>>> prime_check(const SubsemigroupTrunc& t) {
  const auto& m = t.model();
  for (std::size_t b = 0; b < m.size(); ++b)
    for (std::size_t a = b + 1; a-- > 0;) {
      auto c = m.op(a, b);
      if (c && t.contains(*c) && !t.contains(a) && !t.contains(b)) return {false, std::pair{a, b}};
    }
  return {true, std::nullopt};
}

inline bool is_radical(const SubsemigroupTrunc& t) { return radical_check(t).first; }
inline bool is_prime_subsg(const SubsemigroupTrunc& t) { return prime_check(t).first; }

struct ExhaustiveReport {
  std::size_t subsets = 0;         // subsets of the window examined
  std::size_t wrep_count = 0;      // of which closed and without right end point
  std::size_t radical_count = 0;
  std::optional<SubsemigroupTrunc> counterexample;
  bool pass() const { return !counterexample; }
};

/// Radical <=> prime over every nonempty subset of the window that is a
/// subsemigroup without right end point.
inline ExhaustiveReport radical_prime_exhaustive(const OrderedSemigroupModel& m) {
  if (m.size() > 20) throw Error(ErrorCode::BadParameter, "window too large for exhaustive enumeration");
  ExhaustiveReport r;
  for (std::uint32_t mask = 1; mask < (1U << m.size()); ++mask) {
    ++r.subsets;
    std::vector<bool> in(m.size());
    for (std::size_t a = 0; a < m.size(); ++a) in[a] = (mask >> a) & 1U;
    bool closed = true;
    for (std::size_t a = 0; a < m.size() && closed; ++a)
      for (std::size_t b = 0; b < m.size() && closed; ++b)
        if (in[a] && in[b]) {
          auto c = m.op(a, b);
          if (c && !in[*c]) closed = false;
        }
    if (!closed) continue;
    SubsemigroupTrunc t(m, in);
    if (!is_wrep(t)) continue;
    ++r.wrep_count;
    bool rad = is_radical(t);
    r.radical_count += rad ? 1 : 0;
    if (rad != is_prime_subsg(t) && !r.counterexample) r.counterexample = t;
  }
  return r;
}

}  // namespace hyperarith::ideals
