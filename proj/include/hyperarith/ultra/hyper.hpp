#pragma once

#include <set>
#include <string>
#include <string_view>

#include "hyperarith/rational.hpp"
#include "hyperarith/valuation.hpp"
#include "hyperarith/ultra/seq_expr.hpp"

namespace hyperarith::ultra {

/// Finite indices where e vanishes; throws if e vanishes on an infinite set.
/// Sequences with nthprime factors are accepted only as products of nthprime
/// and nonvanishing parts.
inline std::set<Index> zero_indices(const SeqExpr& e) {
  if (e->kind == SeqNode::Kind::NthPrime) return {};
  if (e->kind == SeqNode::Kind::Mul) {
    auto a = zero_indices(e->lhs);
    auto b = zero_indices(e->rhs);
    a.insert(b.begin(), b.end());
    return a;
  }
  if (e->kind == SeqNode::Kind::Neg || e->kind == SeqNode::Kind::Pow) {
    if (e->kind == SeqNode::Kind::Pow && e->exponent == 0) return {};
    return zero_indices(e->lhs);
  }
  auto f = to_exp_poly(e);
  if (!f) throw Error(ErrorCode::DivisorVanishesCofinally, "cannot certify that " + to_string(e) + " is eventually nonzero");
  if (f->is_zero()) throw Error(ErrorCode::DivisorVanishesCofinally, to_string(e) + " is identically zero");
  auto [s, n] = f->eventual_sign();
  std::set<Index> out;
  for (Index i = 0; i < n; ++i)
    if (f->eval(i) == 0) out.insert(i);
  return out;
}

/// Element (num_i / den_i) of the ultrapower of Q, with den_i nonzero for all
/// but finitely many i. At those finitely many indices the component is 0.
class HyperRational {
 public:
  HyperRational(SeqExpr num, SeqExpr den = seq_const(1)) : num_(std::move(num)), den_(std::move(den)) {
    den_zeros_ = zero_indices(den_);
  }

  const SeqExpr& num() const noexcept { return num_; }
  const SeqExpr& den() const noexcept { return den_; }
  const std::set<Index>& den_zeros() const noexcept { return den_zeros_; }

  Rational at(Index i) const {
    if (den_zeros_.contains(i)) return Rational(0);
    return Rational(eval(num_, i), eval(den_, i));
  }

  std::string str() const {
    if (den_->kind == SeqNode::Kind::Const && den_->value == 1) return to_string(num_);
    return detail::wrap_seq(num_, 5) + "/" + detail::wrap_seq(den_, 5);
  }

 private:
  SeqExpr num_;
  SeqExpr den_;
  std::set<Index> den_zeros_;
};

inline HyperRational hadd(const HyperRational& a, const HyperRational& b) {
  return {seq_add(seq_mul(a.num(), b.den()), seq_mul(b.num(), a.den())), seq_mul(a.den(), b.den())};
}
inline HyperRational hsub(const HyperRational& a, const HyperRational& b) {
  return {seq_sub(seq_mul(a.num(), b.den()), seq_mul(b.num(), a.den())), seq_mul(a.den(), b.den())};
}
inline HyperRational hmul(const HyperRational& a, const HyperRational& b) {
  return {seq_mul(a.num(), b.num()), seq_mul(a.den(), b.den())};
}
/// Throws DivisorVanishesCofinally unless b is nonzero on a cofinite set.
inline HyperRational hdiv(const HyperRational& a, const HyperRational& b) {
  zero_indices(b.num());
  return {seq_mul(a.num(), b.den()), seq_mul(a.den(), b.num())};
}

/// "e" or "e/e" in the sequence grammar.
inline HyperRational parse_hyper(std::string_view src) {
  detail::SeqParser p(src);
  SeqExpr num = p.sum();
  if (p.cursor().accept_symbol("/")) {
    SeqExpr den = p.sum();
    if (!p.cursor().at_end()) p.cursor().fail("unexpected trailing input");
    return {num, den};
  }
  if (!p.cursor().at_end()) p.cursor().fail("unexpected trailing input");
  return HyperRational(num);
}

namespace detail {

// u + w*i as a compact sequence expression.
inline SeqExpr linear_seq(const Integer& u, const Integer& w) {
  if (w == 0) return seq_const(u);
  SeqExpr lin = w == 1 ? seq_index() : (w == -1 ? seq_neg(seq_index()) : seq_mul(seq_const(w), seq_index()));
  if (u == 0) return lin;
  return u > 0 ? seq_add(lin, seq_const(u)) : seq_sub(lin, seq_const(-u));
}

// (v_p of the constant, v_p of the exponential base) for a single monomial a * c^i.
inline std::pair<Integer, Integer> monomial_valuation(const Integer& p, const SeqExpr& e) {
  auto f = to_exp_poly(e);
  if (!f || f->terms().size() != 1)
    throw Error(ErrorCode::UnsupportedValuation, "v_p of " + to_string(e) + " is outside the monomial fragment");
  const auto& [c, poly] = *f->terms().begin();
  bool monomial = true;
  for (std::size_t j = 0; j + 1 < poly.size(); ++j) monomial = monomial && poly[j] == 0;
  if (!monomial) throw Error(ErrorCode::UnsupportedValuation, "v_p of " + to_string(e) + " is outside the monomial fragment");
  if (poly.size() > 1)
    throw Error(ErrorCode::UnsupportedValuation, "v_p of a power of i is neither periodic nor polynomial");
  return {integer_valuation(p, poly.back()), integer_valuation(p, c)};
}

}  // namespace detail

/// Exponent sequence i -> v_p(h_i) on the monomial fragment (constants, c^i and products).
inline SeqExpr hyper_dp(const Integer& p, const HyperRational& h) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, p.str() + " is not prime");
  auto [un, wn] = detail::monomial_valuation(p, h.num());
  auto [ud, wd] = detail::monomial_valuation(p, h.den());
  return detail::linear_seq(un - ud, wn - wd);
}

}  // namespace hyperarith::ultra
