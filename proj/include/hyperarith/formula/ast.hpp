#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hyperarith/rational.hpp"

namespace hyperarith::formula {

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Ring-language term: variables, integer literals, + - * and ^ by a literal exponent.
struct TermNode {
  enum class Kind { Var, Num, Add, Sub, Mul, Neg, Pow };
  Kind kind;
  std::string name;   // Var
  Integer value;      // Num
  Term lhs, rhs;      // Add/Sub/Mul; Neg and Pow use lhs
  unsigned exponent = 0;  // Pow
};

inline Term var(std::string name) {
  return std::make_shared<const TermNode>(TermNode{TermNode::Kind::Var, std::move(name), 0, nullptr, nullptr, 0});
}
inline Term num(Integer v) {
  return std::make_shared<const TermNode>(TermNode{TermNode::Kind::Num, {}, std::move(v), nullptr, nullptr, 0});
}
inline Term binary(TermNode::Kind k, Term a, Term b) {
  return std::make_shared<const TermNode>(TermNode{k, {}, 0, std::move(a), std::move(b), 0});
}
inline Term operator+(Term a, Term b) { return binary(TermNode::Kind::Add, std::move(a), std::move(b)); }
inline Term operator-(Term a, Term b) { return binary(TermNode::Kind::Sub, std::move(a), std::move(b)); }
inline Term operator*(Term a, Term b) { return binary(TermNode::Kind::Mul, std::move(a), std::move(b)); }
inline Term operator-(Term a) {
  return std::make_shared<const TermNode>(TermNode{TermNode::Kind::Neg, {}, 0, std::move(a), nullptr, 0});
}
inline Term pow(Term base, unsigned e) {
  return std::make_shared<const TermNode>(TermNode{TermNode::Kind::Pow, {}, 0, std::move(base), nullptr, e});
}

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Kind { True, False, Eq, Lt, Divides, Atom, Not, And, Or, Implies, Iff, Exists, Forall };
  Kind kind;
  std::string name;         // Atom predicate name, or the bound variable of a quantifier
  std::vector<Term> args;   // relation operands / atom arguments
  Formula lhs, rhs;         // Not and quantifiers use lhs
};

namespace detail {
inline Formula make(FormulaNode::Kind k, std::string name, std::vector<Term> args, Formula l, Formula r) {
  return std::make_shared<const FormulaNode>(FormulaNode{k, std::move(name), std::move(args), std::move(l), std::move(r)});
}
}  // namespace detail

inline Formula top() { return detail::make(FormulaNode::Kind::True, {}, {}, nullptr, nullptr); }
inline Formula bottom() { return detail::make(FormulaNode::Kind::False, {}, {}, nullptr, nullptr); }
inline Formula eq(Term a, Term b) { return detail::make(FormulaNode::Kind::Eq, {}, {std::move(a), std::move(b)}, nullptr, nullptr); }
inline Formula lt(Term a, Term b) { return detail::make(FormulaNode::Kind::Lt, {}, {std::move(a), std::move(b)}, nullptr, nullptr); }
inline Formula divides(Term a, Term b) {
  return detail::make(FormulaNode::Kind::Divides, {}, {std::move(a), std::move(b)}, nullptr, nullptr);
}
inline Formula atom(std::string name, std::vector<Term> args) {
  return detail::make(FormulaNode::Kind::Atom, std::move(name), std::move(args), nullptr, nullptr);
}
inline Formula negation(Formula f) { return detail::make(FormulaNode::Kind::Not, {}, {}, std::move(f), nullptr); }
inline Formula conjunction(Formula a, Formula b) { return detail::make(FormulaNode::Kind::And, {}, {}, std::move(a), std::move(b)); }
inline Formula disjunction(Formula a, Formula b) { return detail::make(FormulaNode::Kind::Or, {}, {}, std::move(a), std::move(b)); }
inline Formula implies(Formula a, Formula b) {
  return detail::make(FormulaNode::Kind::Implies, {}, {}, std::move(a), std::move(b));
}
inline Formula iff(Formula a, Formula b) { return detail::make(FormulaNode::Kind::Iff, {}, {}, std::move(a), std::move(b)); }
inline Formula exists(std::string v, Formula body) {
  return detail::make(FormulaNode::Kind::Exists, std::move(v), {}, std::move(body), nullptr);
}
inline Formula forall(std::string v, Formula body) {
  return detail::make(FormulaNode::Kind::Forall, std::move(v), {}, std::move(body), nullptr);
}
inline Formula neq(Term a, Term b) { return negation(eq(std::move(a), std::move(b))); }

/// Conjunction of a list (true when empty), left-nested.
inline Formula conj(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula r = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) r = conjunction(r, fs[i]);
  return r;
}
inline Formula disj(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula r = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) r = disjunction(r, fs[i]);
  return r;
}

// Structural equality.
inline bool equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermNode::Kind::Var: return a->name == b->name;
    case TermNode::Kind::Num: return a->value == b->value;
    case TermNode::Kind::Neg: return equal(a->lhs, b->lhs);
    case TermNode::Kind::Pow: return a->exponent == b->exponent && equal(a->lhs, b->lhs);
    default: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

inline bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr || a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

inline void collect_vars(const Term& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == TermNode::Kind::Var) out.insert(t->name);
  collect_vars(t->lhs, out);
  collect_vars(t->rhs, out);
}

inline bool term_mentions(const Term& t, const std::string& v) {
  if (!t) return false;
  if (t->kind == TermNode::Kind::Var) return t->name == v;
  return term_mentions(t->lhs, v) || term_mentions(t->rhs, v);
}

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  if (f == nullptr) return out;
  for (const auto& t : f->args) collect_vars(t, out);
  auto l = free_vars(f->lhs);
  auto r = free_vars(f->rhs);
  out.insert(l.begin(), l.end());
  out.insert(r.begin(), r.end());
  if (f->kind == FormulaNode::Kind::Exists || f->kind == FormulaNode::Kind::Forall) out.erase(f->name);
  return out;
}

inline bool quantifier_free(const Formula& f) {
  if (f == nullptr) return true;
  if (f->kind == FormulaNode::Kind::Exists || f->kind == FormulaNode::Kind::Forall) return false;
  return quantifier_free(f->lhs) && quantifier_free(f->rhs);
}

// Capture-avoiding substitution is not needed: builtins use disjoint variable names.
inline Term substitute(const Term& t, const std::string& v, const Term& by) {
  if (!t) return t;
  switch (t->kind) {
    case TermNode::Kind::Var: return t->name == v ? by : t;
    case TermNode::Kind::Num: return t;
    case TermNode::Kind::Neg: return -substitute(t->lhs, v, by);
    case TermNode::Kind::Pow: return pow(substitute(t->lhs, v, by), t->exponent);
    default: return binary(t->kind, substitute(t->lhs, v, by), substitute(t->rhs, v, by));
  }
}

inline Formula substitute(const Formula& f, const std::string& v, const Term& by) {
  if (f == nullptr) return f;
  if ((f->kind == FormulaNode::Kind::Exists || f->kind == FormulaNode::Kind::Forall) && f->name == v) return f;
  std::vector<Term> args;
  for (const auto& t : f->args) args.push_back(substitute(t, v, by));
  return detail::make(f->kind, f->name, std::move(args), substitute(f->lhs, v, by), substitute(f->rhs, v, by));
}

/// Simultaneous renaming of free variables (names must not collide with bound ones).
inline Formula instantiate(Formula f, const std::vector<std::string>& from, const std::vector<Term>& to) {
  // Two passes through fresh names keep the substitution simultaneous.
  for (std::size_t i = 0; i < from.size(); ++i) f = substitute(f, from[i], var("_tmp" + std::to_string(i)));
  for (std::size_t i = 0; i < from.size(); ++i) f = substitute(f, "_tmp" + std::to_string(i), to[i]);
  return f;
}

}  // namespace hyperarith::formula
