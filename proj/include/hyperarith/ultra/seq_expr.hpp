#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperarith/lexer.hpp"
#include "hyperarith/primes.hpp"
#include "hyperarith/rational.hpp"
#include "hyperarith/ultra/periodic_set.hpp"

namespace hyperarith::ultra {

struct SeqNode;
using SeqExpr = std::shared_ptr<const SeqNode>;

/// Closed-form integer sequence in the index symbol i.
struct SeqNode {
  enum class Kind { Const, Index, Add, Sub, Mul, Neg, Pow, Exp, NthPrime };
  Kind kind;
  Integer value;  // Const value, or the base of Exp (c^i)
  SeqExpr lhs, rhs;
  unsigned exponent = 0;  // Pow
};

namespace detail {
inline SeqExpr node(SeqNode::Kind k, Integer v = 0, SeqExpr l = nullptr, SeqExpr r = nullptr, unsigned e = 0) {
  return std::make_shared<const SeqNode>(SeqNode{k, std::move(v), std::move(l), std::move(r), e});
}
}  // namespace detail

inline SeqExpr seq_const(Integer v) { return detail::node(SeqNode::Kind::Const, std::move(v)); }
inline SeqExpr seq_index() { return detail::node(SeqNode::Kind::Index); }
inline SeqExpr seq_add(SeqExpr a, SeqExpr b) { return detail::node(SeqNode::Kind::Add, 0, std::move(a), std::move(b)); }
inline SeqExpr seq_sub(SeqExpr a, SeqExpr b) { return detail::node(SeqNode::Kind::Sub, 0, std::move(a), std::move(b)); }
inline SeqExpr seq_mul(SeqExpr a, SeqExpr b) { return detail::node(SeqNode::Kind::Mul, 0, std::move(a), std::move(b)); }
inline SeqExpr seq_neg(SeqExpr a) { return detail::node(SeqNode::Kind::Neg, 0, std::move(a)); }
inline SeqExpr seq_pow(SeqExpr a, unsigned k) { return detail::node(SeqNode::Kind::Pow, 0, std::move(a), nullptr, k); }
inline SeqExpr seq_exp(Integer base) {
  if (base < 2) throw Error(ErrorCode::BadParameter, "exponential base must be at least 2");
  return detail::node(SeqNode::Kind::Exp, std::move(base));
}
inline SeqExpr seq_nthprime() { return detail::node(SeqNode::Kind::NthPrime); }

inline Integer eval(const SeqExpr& e, Index i) {
  using K = SeqNode::Kind;
  switch (e->kind) {
    case K::Const: return e->value;
    case K::Index: return Integer(i);
    case K::Add: return eval(e->lhs, i) + eval(e->rhs, i);
    case K::Sub: return eval(e->lhs, i) - eval(e->rhs, i);
    case K::Mul: return eval(e->lhs, i) * eval(e->rhs, i);
    case K::Neg: return -eval(e->lhs, i);
    case K::Pow: return ipow(eval(e->lhs, i), e->exponent);
    case K::Exp: return ipow(e->value, i);
    case K::NthPrime: return Integer(nth_prime(i));
  }
  return 0;
}

inline bool mentions_nthprime(const SeqExpr& e) {
  if (e == nullptr) return false;
  return e->kind == SeqNode::Kind::NthPrime || mentions_nthprime(e->lhs) || mentions_nthprime(e->rhs);
}

namespace detail {

class SeqParser {
 public:
  explicit SeqParser(std::string_view src) : cur_(tokenize(src)) {}

  SeqExpr sum() {
    SeqExpr l = product();
    for (;;) {
      if (cur_.accept_symbol("+"))
        l = seq_add(l, product());
      else if (cur_.accept_symbol("-"))
        l = seq_sub(l, product());
      else
        return l;
    }
  }

  TokenCursor& cursor() { return cur_; }

 private:
  SeqExpr product() {
    SeqExpr l = negation();
    while (cur_.accept_symbol("*")) l = seq_mul(l, negation());
    return l;
  }

  SeqExpr negation() {
    if (cur_.accept_symbol("-")) return seq_neg(negation());
    return power();
  }

  SeqExpr power() {
    SeqExpr base = primary();
    if (!cur_.at_symbol("^")) return base;
    cur_.next();
    const Token& e = cur_.peek();
    if (e.kind == Token::Kind::Ident && e.text == "i") {
      if (base->kind != SeqNode::Kind::Const || base->value < 2)
        throw SyntaxError("only a constant base >= 2 may be raised to i", e.line, e.column);
      cur_.next();
      return seq_exp(base->value);
    }
    if (e.kind != Token::Kind::Number) cur_.fail("expected a literal exponent or i");
    Integer k = parse_integer(cur_.next().text);
    if (k > 64) throw SyntaxError("exponent too large", e.line, e.column);
    return seq_pow(base, static_cast<unsigned>(k));
  }

  SeqExpr primary() {
    const Token& t = cur_.peek();
    if (t.kind == Token::Kind::Number) return seq_const(parse_integer(cur_.next().text));
    if (t.kind == Token::Kind::Ident && t.text == "i") {
      cur_.next();
      return seq_index();
    }
    if (t.kind == Token::Kind::Ident && t.text == "nthprime") {
      cur_.next();
      cur_.expect_symbol("(");
      if (!(cur_.peek().kind == Token::Kind::Ident && cur_.peek().text == "i")) cur_.fail("nthprime takes i");
      cur_.next();
      cur_.expect_symbol(")");
      return seq_nthprime();
    }
    if (cur_.accept_symbol("(")) {
      SeqExpr inner = sum();
      cur_.expect_symbol(")");
      return inner;
    }
    cur_.fail("expected a sequence term");
  }

  TokenCursor cur_;
};

inline int seq_prec(const SeqExpr& e) {
  using K = SeqNode::Kind;
  switch (e->kind) {
    case K::Add:
    case K::Sub: return 1;
    case K::Mul: return 2;
    case K::Neg: return 3;
    case K::Pow:
    case K::Exp: return 4;
    case K::Const: return e->value < 0 ? 3 : 5;
    default: return 5;
  }
}

inline std::string print_seq(const SeqExpr& e);

inline std::string wrap_seq(const SeqExpr& e, int need) {
  std::string s = print_seq(e);
  return seq_prec(e) < need ? "(" + s + ")" : s;
}

inline std::string print_seq(const SeqExpr& e) {
  using K = SeqNode::Kind;
  switch (e->kind) {
    case K::Const: return e->value.str();
    case K::Index: return "i";
    case K::Add: return wrap_seq(e->lhs, 1) + " + " + wrap_seq(e->rhs, 2);
    case K::Sub: return wrap_seq(e->lhs, 1) + " - " + wrap_seq(e->rhs, 2);
    case K::Mul: return wrap_seq(e->lhs, 2) + " * " + wrap_seq(e->rhs, 3);
    case K::Neg: return "-" + wrap_seq(e->lhs, 3);
    case K::Pow: return wrap_seq(e->lhs, 5) + "^" + std::to_string(e->exponent);
    case K::Exp: return e->value.str() + "^i";
    case K::NthPrime: return "nthprime(i)";
  }
  return {};
}

}  // namespace detail

/// Parses the sequence grammar: integer literals, i, + - *, ^k, c^i and nthprime(i).
inline SeqExpr parse_seq(std::string_view src) {
  detail::SeqParser p(src);
  SeqExpr e = p.sum();
  if (!p.cursor().at_end()) p.cursor().fail("unexpected trailing input");
  return e;
}

inline std::string to_string(const SeqExpr& e) { return detail::print_seq(e); }

/// Exponential polynomial sum_k P_k(i) * c_k^i with integer coefficients and
/// distinct bases c_k >= 1; the normal form behind every symbolic decision.
class ExpPoly {
 public:
  using Poly = std::vector<Integer>;  // ascending coefficients

  ExpPoly() = default;
  static ExpPoly constant(const Integer& v) { return term(1, {v}); }
  static ExpPoly index() { return term(1, {0, 1}); }
  static ExpPoly exponential(const Integer& base) { return term(base, {1}); }

  const std::map<Integer, Poly>& terms() const noexcept { return t_; }
  bool is_zero() const noexcept { return t_.empty(); }

  std::optional<Integer> constant_value() const {
    if (t_.empty()) return Integer(0);
    if (t_.size() == 1 && t_.begin()->first == 1 && t_.begin()->second.size() == 1) return t_.begin()->second[0];
    return std::nullopt;
  }

  friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly r = a;
    for (const auto& [c, p] : b.t_) r.accumulate(c, p, 1);
    return r;
  }
  friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly r = a;
    for (const auto& [c, p] : b.t_) r.accumulate(c, p, -1);
    return r;
  }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly r;
    for (const auto& [c, p] : a.t_)
      for (const auto& [d, q] : b.t_) {
        Poly prod(p.size() + q.size() - 1, 0);
        for (std::size_t x = 0; x < p.size(); ++x)
          for (std::size_t y = 0; y < q.size(); ++y) prod[x + y] += p[x] * q[y];
        r.accumulate(c * d, prod, 1);
      }
    return r;
  }
  ExpPoly operator-() const { return ExpPoly() - *this; }

  ExpPoly pow(unsigned k) const {
    ExpPoly r = constant(1);
    for (unsigned j = 0; j < k; ++j) r = r * *this;
    return r;
  }

  Integer eval(Index i) const {
    Integer sum = 0;
    Integer x = i;
    for (const auto& [c, p] : t_) sum += horner(p, x) * ipow(c, i);
    return sum;
  }

  /// Value mod m (m > 0), in [0, m).
  Integer eval_mod(Index i, const Integer& m) const {
    Integer sum = 0;
    Integer x = i;
    for (const auto& [c, p] : t_) {
      Integer pv = horner(p, x) % m;
      sum += pv * Integer(boost::multiprecision::powm(c, Integer(i), m));
    }
    sum %= m;
    if (sum < 0) sum += m;
    return sum;
  }

  /// For nonzero F: (s, n) with sign F(i) = s for every i >= n.
  std::pair<int, Index> eventual_sign(Index cap = 20000) const {
    if (t_.empty()) throw Error(ErrorCode::BadParameter, "eventual sign of the zero sequence");
    const auto& [c, p] = *t_.rbegin();
    const Integer a = abs(p.back());
    const int s = p.back() > 0 ? 1 : -1;
    Integer low = 0;  // sum of |lower coefficients| of the top term
    for (std::size_t j = 0; j + 1 < p.size(); ++j) low += abs(p[j]);
    Integer rest = 0;
    std::size_t rest_deg = 0;
    Integer c2 = 0;
    for (const auto& [b, q] : t_) {
      if (b == c) continue;
      for (const auto& v : q) rest += abs(v);
      rest_deg = std::max(rest_deg, q.size() - 1);
      c2 = std::max(c2, b);
    }
    const std::size_t d = p.size() - 1;
    const unsigned e = rest_deg > d ? static_cast<unsigned>(rest_deg - d) : 0U;
    Integer cp = c;   // c^i
    Integer c2p = c2;  // c2^i
    for (Index i = 1; i <= cap; ++i) {
      Integer x = i;
      bool ok = a * x > 2 * low;
      if (ok && rest != 0) {
        ok = c * ipow(x, e) >= c2 * ipow(x + 1, e) && a * cp > 2 * rest * ipow(x, e) * c2p;
      }
      if (ok) return {s, i};
      cp *= c;
      c2p *= c2;
    }
    throw Error(ErrorCode::UnsupportedTruthSet, "sign crossover beyond index " + std::to_string(cap));
  }

  /// Index set where m divides F(i), for a nonzero constant m.
  PeriodicSet divisible_by(Integer m) const {
    m = abs(m);
    if (m == 0) throw Error(ErrorCode::BadParameter, "divisibility by zero");
    Index pre = 0;
    Index period = 1;
    for (const auto& [c, p] : t_) {
      if (p.size() > 1) {
        if (m > kMaxModulus) throw Error(ErrorCode::UnsupportedTruthSet, "period of a polynomial mod " + m.str() + " too large");
        period = std::lcm(period, static_cast<Index>(m));
      }
      auto [bp, bl] = power_cycle(c, m);
      pre = std::max(pre, bp);
      period = std::lcm(period, bl);
      if (period > kMaxModulus) throw Error(ErrorCode::UnsupportedTruthSet, "period mod " + m.str() + " too large");
    }
    std::vector<bool> res(period, false);
    for (Index j = pre; j < pre + period; ++j) res[j % period] = eval_mod(j, m) == 0;
    std::set<Index> plus;
    std::set<Index> minus;
    for (Index j = 0; j < pre; ++j) (eval_mod(j, m) == 0 ? plus : minus).insert(j);
    return {period, std::move(res), std::move(plus), std::move(minus)};
  }

 private:
  static ExpPoly term(const Integer& base, Poly p) {
    ExpPoly r;
    r.accumulate(base, p, 1);
    return r;
  }

  static Integer horner(const Poly& p, const Integer& x) {
    Integer v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
  }

  // (preperiod, period) of c^i mod m.
  static std::pair<Index, Index> power_cycle(const Integer& c, const Integer& m) {
    std::map<Integer, Index> seen;
    Integer v = 1 % m;
    for (Index i = 0; i <= kMaxModulus; ++i) {
      auto [it, fresh] = seen.emplace(v, i);
      if (!fresh) return {it->second, i - it->second};
      v = v * c % m;
    }
    throw Error(ErrorCode::UnsupportedTruthSet, "period of " + c.str() + "^i mod " + m.str() + " too large");
  }

  void accumulate(const Integer& base, const Poly& p, int sign) {
    Poly& q = t_[base];
    if (q.size() < p.size()) q.resize(p.size(), 0);
    for (std::size_t j = 0; j < p.size(); ++j) q[j] += sign * p[j];
    while (!q.empty() && q.back() == 0) q.pop_back();
    if (q.empty()) t_.erase(base);
  }

  std::map<Integer, Poly> t_;
};

/// Normal form of a sequence; nullopt when nthprime(i) occurs.
inline std::optional<ExpPoly> to_exp_poly(const SeqExpr& e) {
  using K = SeqNode::Kind;
  switch (e->kind) {
    case K::Const: return ExpPoly::constant(e->value);
    case K::Index: return ExpPoly::index();
    case K::Exp: return ExpPoly::exponential(e->value);
    case K::NthPrime: return std::nullopt;
    case K::Neg: {
      auto a = to_exp_poly(e->lhs);
      if (!a) return a;
      return -*a;
    }
    case K::Pow: {
      auto a = to_exp_poly(e->lhs);
      if (!a) return a;
      return a->pow(e->exponent);
    }
    default: {
      auto a = to_exp_poly(e->lhs);
      auto b = a ? to_exp_poly(e->rhs) : std::nullopt;
      if (!b) return b;
      if (e->kind == K::Add) return *a + *b;
      if (e->kind == K::Sub) return *a - *b;
      return *a * *b;
    }
  }
}

}  // namespace hyperarith::ultra
