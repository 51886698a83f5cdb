#pragma once

#include <map>
#include <string>

#include "hyperarith/formula/eval.hpp"
#include "hyperarith/ultra/hyper.hpp"
#include "hyperarith/ultra/oracle.hpp"

namespace hyperarith::ultra {

using HyperEnv = std::map<std::string, HyperRational>;

/// Truth of f at coordinate i, evaluated exactly in Q.
inline formula::TriBool componentwise(const formula::Formula& f, const HyperEnv& env, Index i) {
  formula::Environment at;
  for (const auto& [name, h] : env) at[name] = h.at(i);
  return formula::eval(f, at, 1);
}

namespace detail {

struct SymFrac {
  ExpPoly num;
  ExpPoly den;
};

[[noreturn]] inline void unsupported(const std::string& why) { throw Error(ErrorCode::UnsupportedTruthSet, why); }

class TruthSetBuilder {
 public:
  explicit TruthSetBuilder(const HyperEnv& env) : env_(env) {}

  PeriodicSet build(const formula::Formula& f) {
    using K = formula::FormulaNode::Kind;
    switch (f->kind) {
      case K::True: return PeriodicSet::all();
      case K::False: return PeriodicSet::empty();
      case K::Not: return build(f->lhs).complement();
      case K::And: return intersect(build(f->lhs), build(f->rhs));
      case K::Or: return unite(build(f->lhs), build(f->rhs));
      case K::Implies: return unite(build(f->lhs).complement(), build(f->rhs));
      case K::Iff: {
        PeriodicSet a = build(f->lhs);
        PeriodicSet b = build(f->rhs);
        return unite(intersect(a, b), intersect(a.complement(), b.complement()));
      }
      case K::Exists:
      case K::Forall: unsupported("quantified formulas have no componentwise truth set here");
      case K::Eq: {
        SymFrac a = term(f->args[0]);
        SymFrac b = term(f->args[1]);
        return sign_set(a.num * b.den - b.num * a.den, 0);
      }
      case K::Lt: {
        SymFrac a = term(f->args[0]);
        SymFrac b = term(f->args[1]);
        return sign_set((a.num * b.den - b.num * a.den) * a.den * b.den, -1);
      }
      case K::Divides: return divides(term(f->args[0]), term(f->args[1]));
      case K::Atom: {
        if (f->name == "Z") return integral(term(f->args[0]));
        if (f->name == "N") {
          SymFrac t = term(f->args[0]);
          return intersect(integral(t), sign_set(t.num * t.den, -1).complement());
        }
        unsupported("atom " + f->name + " is outside the symbolic fragment");
      }
    }
    unsupported("unexpected formula");
  }

 private:
  SymFrac term(const formula::Term& t) {
    using K = formula::TermNode::Kind;
    switch (t->kind) {
      case K::Num: return {ExpPoly::constant(t->value), ExpPoly::constant(1)};
      case K::Var: {
        auto it = env_.find(t->name);
        if (it == env_.end()) throw Error(ErrorCode::UnboundVariable, "unbound variable '" + t->name + "'");
        auto n = to_exp_poly(it->second.num());
        auto d = to_exp_poly(it->second.den());
        if (!n || !d) unsupported("nthprime(i) is outside the symbolic fragment");
        return {*n, *d};
      }
      case K::Neg: {
        SymFrac a = term(t->lhs);
        return {-a.num, a.den};
      }
      case K::Pow: {
        SymFrac a = term(t->lhs);
        return {a.num.pow(t->exponent), a.den.pow(t->exponent)};
      }
      default: {
        SymFrac a = term(t->lhs);
        SymFrac b = term(t->rhs);
        if (t->kind == K::Mul) return {a.num * b.num, a.den * b.den};
        ExpPoly cross = t->kind == K::Add ? a.num * b.den + b.num * a.den : a.num * b.den - b.num * a.den;
        return {cross, a.den * b.den};
      }
    }
  }

  // Indices where sign F(i) == want.
  static PeriodicSet sign_set(const ExpPoly& f, int want) {
    if (f.is_zero()) return want == 0 ? PeriodicSet::all() : PeriodicSet::empty();
    auto [s, n] = f.eventual_sign();
    std::set<Index> plus;
    std::set<Index> minus;
    for (Index i = 0; i < n; ++i) {
      Integer v = f.eval(i);
      int si = v > 0 ? 1 : (v < 0 ? -1 : 0);
      (si == want ? plus : minus).insert(i);
    }
    return {1, {s == want}, std::move(plus), std::move(minus)};
  }

  // The constant value of a fraction, if it has one.
  static std::optional<Rational> constant(const SymFrac& t) {
    auto n = t.num.constant_value();
    auto d = t.den.constant_value();
    if (n && d && *d != 0) return Rational(*n, *d);
    if (t.num.is_zero()) return Rational(0);
    return std::nullopt;
  }

  static PeriodicSet integral(const SymFrac& t) {
    if (auto c = constant(t)) return c->is_integer() ? PeriodicSet::all() : PeriodicSet::empty();
    auto d = t.den.constant_value();
    if (!d || *d == 0) unsupported("integrality with a nonconstant denominator");
    return t.num.divisible_by(*d);
  }

  static PeriodicSet divides(const SymFrac& s, const SymFrac& t) {
    auto q = constant(s);
    if (!q) unsupported("divisibility by a nonconstant sequence");
    if (q->is_zero()) return sign_set(t.num, 0);
    auto d = t.den.constant_value();
    if (!d || *d == 0) unsupported("divisibility of a sequence with nonconstant denominator");
    return (t.num * ExpPoly::constant(q->den())).divisible_by(*d * q->num());
  }

  const HyperEnv& env_;
};

}  // namespace detail

/// Exact index set where the quantifier-free formula f holds componentwise.
/// Throws UnsupportedTruthSet outside the symbolic fragment.
inline PeriodicSet truth_set(const formula::Formula& f, const HyperEnv& env) {
  for (const auto& v : formula::free_vars(f))
    if (!env.contains(v)) throw Error(ErrorCode::UnboundVariable, "unbound variable '" + v + "'");
  PeriodicSet s = detail::TruthSetBuilder(env).build(f);
  // Coordinates where some denominator vanishes are fixed up directly.
  std::set<Index> patch;
  for (const auto& [name, h] : env) patch.insert(h.den_zeros().begin(), h.den_zeros().end());
  for (Index i : patch) s = s.with(i, componentwise(f, env, i) == formula::TriBool::True);
  return s;
}

/// Łoś: f holds in the ultrapower iff its truth set is in the ultrafilter.
inline bool los_eval(UltrafilterOracle& u, const formula::Formula& f, const HyperEnv& env) {
  return u.decides(truth_set(f, env));
}

}  // namespace hyperarith::ultra
