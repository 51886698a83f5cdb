#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperarith/formula/ast.hpp"
#include "hyperarith/formula/atoms.hpp"
#include "hyperarith/rational_enum.hpp"

namespace hyperarith::formula {

enum class TriBool { False, True, Unknown };

inline std::string_view to_string(TriBool b) {
  switch (b) {
    case TriBool::True: return "true";
    case TriBool::False: return "false";
    case TriBool::Unknown: return "unknown";
  }
  return "unknown";
}

inline TriBool tri(bool b) { return b ? TriBool::True : TriBool::False; }
inline TriBool tri_not(TriBool a) {
  return a == TriBool::Unknown ? a : (a == TriBool::True ? TriBool::False : TriBool::True);
}

using Environment = std::map<std::string, Rational>;

// ---------------------------------------------------------------------------
// Univariate polynomials, used to solve equality guards for a search variable.

using Poly = std::vector<Rational>;  // coefficient of v^k at index k

namespace detail {

inline void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Poly padd(const Poly& a, const Poly& b, int sign = 1) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    Rational x = i < a.size() ? a[i] : Rational(0);
    Rational y = i < b.size() ? b[i] : Rational(0);
    r[i] = sign > 0 ? x + y : x - y;
  }
  trim(r);
  return r;
}

inline Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  trim(r);
  return r;
}

inline constexpr std::size_t kMaxGuardDegree = 12;

}  // namespace detail

/// t as a polynomial in v; nullopt if another variable is unbound or the degree is large.
inline std::optional<Poly> as_poly(const Term& t, const std::string& v, const Environment& env) {
  using K = TermNode::Kind;
  switch (t->kind) {
    case K::Var: {
      if (t->name == v) return Poly{Rational(0), Rational(1)};
      auto it = env.find(t->name);
      if (it == env.end()) return std::nullopt;
      Poly p{it->second};
      detail::trim(p);
      return p;
    }
    case K::Num: {
      Poly p{Rational(t->value)};
      detail::trim(p);
      return p;
    }
    case K::Neg: {
      auto a = as_poly(t->lhs, v, env);
      if (!a) return a;
      return detail::padd({}, *a, -1);
    }
    case K::Pow: {
      auto a = as_poly(t->lhs, v, env);
      if (!a) return a;
      Poly r{Rational(1)};
      for (unsigned i = 0; i < t->exponent; ++i) {
        r = detail::pmul(r, *a);
        if (r.size() > detail::kMaxGuardDegree + 1) return std::nullopt;
      }
      return r;
    }
    default: {
      auto a = as_poly(t->lhs, v, env);
      if (!a) return a;
      auto b = as_poly(t->rhs, v, env);
      if (!b) return b;
      if (t->kind == K::Add) return detail::padd(*a, *b);
      if (t->kind == K::Sub) return detail::padd(*a, *b, -1);
      Poly r = detail::pmul(*a, *b);
      if (r.size() > detail::kMaxGuardDegree + 1) return std::nullopt;
      return r;
    }
  }
}

namespace detail {

inline std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : default_primes().factor(n)) {
    std::size_t cur = out.size();
    Integer pk = 1;
    for (std::int64_t k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < cur; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Rational peval(const Poly& p, const Rational& x) {
  Rational r(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

}  // namespace detail

/// Rational roots of a nonzero polynomial; nullopt if a coefficient is too large to factor.
inline std::optional<std::vector<Rational>> rational_roots(Poly p) {
  detail::trim(p);
  std::vector<Rational> roots;
  std::size_t low = 0;
  while (low < p.size() && p[low].is_zero()) ++low;
  if (low > 0) {
    roots.emplace_back(0);
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (p.size() >= 2) {
    Integer l = 1;
    for (const auto& c : p) l = lcm(l, c.den());
    std::vector<Integer> a;
    for (const auto& c : p) a.push_back(c.num() * (l / c.den()));
    if (a.size() == 2) {
      roots.push_back(Rational(-a[0]) / Rational(a[1]));
    } else if (a.size() == 3) {
      Integer disc = a[1] * a[1] - 4 * a[2] * a[0];
      if (disc >= 0) {
        if (auto s = exact_sqrt(disc)) {
          roots.push_back(Rational(-a[1] + *s) / Rational(2 * a[2]));
          roots.push_back(Rational(-a[1] - *s) / Rational(2 * a[2]));
        }
      }
    } else {
      try {
        auto num_div = detail::positive_divisors(a.front());
        auto den_div = detail::positive_divisors(a.back());
        for (const auto& q : den_div)
          for (const auto& n : num_div)
            for (int s : {1, -1}) {
              Rational cand(Integer(s) * n, q);
              if (detail::peval(p, cand).is_zero()) roots.push_back(cand);
            }
      } catch (const Error&) {
        return std::nullopt;
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------
// Search domains.

/// Over-approximation of the values a search variable needs to range over.
struct Domain {
  enum class Kind { Finite, Nat, Int, All };  // Finite with no values is the empty domain
  Kind kind = Kind::All;
  std::vector<Rational> values;

  static Domain all() { return {}; }
  static Domain nat() { return {Kind::Nat, {}}; }
  static Domain integers() { return {Kind::Int, {}}; }
  static Domain empty() { return {Kind::Finite, {}}; }
  static Domain finite(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return {Kind::Finite, std::move(v)};
  }

  bool is_finite() const { return kind == Kind::Finite; }

  bool contains(const Rational& x) const {
    switch (kind) {
      case Kind::Finite: return std::binary_search(values.begin(), values.end(), x);
      case Kind::Nat: return is_nat(x);
      case Kind::Int: return x.is_integer();
      case Kind::All: return true;
    }
    return true;
  }
};

inline Domain intersect(const Domain& a, const Domain& b) {
  if (a.is_finite() || b.is_finite()) {
    const Domain& f = a.is_finite() ? a : b;
    const Domain& o = a.is_finite() ? b : a;
    std::vector<Rational> keep;
    for (const auto& x : f.values)
      if (o.contains(x)) keep.push_back(x);
    return Domain::finite(std::move(keep));
  }
  return a.kind < b.kind ? a : b;
}

inline Domain unite(const Domain& a, const Domain& b) {
  if (a.is_finite() && b.is_finite()) {
    auto v = a.values;
    v.insert(v.end(), b.values.begin(), b.values.end());
    return Domain::finite(std::move(v));
  }
  if (a.is_finite() || b.is_finite()) {
    const Domain& f = a.is_finite() ? a : b;
    const Domain& o = a.is_finite() ? b : a;
    Domain r = o;
    for (const auto& x : f.values)
      while (!r.contains(x)) r.kind = static_cast<Domain::Kind>(static_cast<int>(r.kind) + 1);
    return r;
  }
  return a.kind > b.kind ? a : b;
}

// ---------------------------------------------------------------------------

/// Bounded-search evaluator. Quantified variables range over rationals of
/// height <= bound, except where the body confines them to a finite set, which
/// is then searched completely.
class Evaluator {
 public:
  explicit Evaluator(long long height_bound) : bound_(height_bound) {
    if (height_bound < 1) throw Error(ErrorCode::BadParameter, "height bound must be positive");
  }

  TriBool eval(const Formula& f, Environment env) {
    for (const auto& v : free_vars(f))
      if (!env.contains(v)) throw Error(ErrorCode::UnboundVariable, "unbound variable '" + v + "'");
    env_ = std::move(env);
    return run(f);
  }

  std::optional<Rational> try_term(const Term& t) const {
    using K = TermNode::Kind;
    switch (t->kind) {
      case K::Var: {
        auto it = env_.find(t->name);
        if (it == env_.end()) return std::nullopt;
        return it->second;
      }
      case K::Num: return Rational(t->value);
      case K::Neg: {
        auto a = try_term(t->lhs);
        if (!a) return a;
        return Rational(0) - *a;
      }
      case K::Pow: {
        auto a = try_term(t->lhs);
        if (!a) return a;
        return a->pow(t->exponent);
      }
      default: {
        auto a = try_term(t->lhs);
        if (!a) return a;
        auto b = try_term(t->rhs);
        if (!b) return b;
        if (t->kind == K::Add) return *a + *b;
        if (t->kind == K::Sub) return *a - *b;
        return *a * *b;
      }
    }
  }

 private:
  Rational term(const Term& t) const {
    auto r = try_term(t);
    if (!r) {
      std::set<std::string> vs;
      collect_vars(t, vs);
      for (const auto& v : vs)
        if (!env_.contains(v)) throw Error(ErrorCode::UnboundVariable, "unbound variable '" + v + "'");
    }
    return *r;
  }

  TriBool run(const Formula& f) {
    using K = FormulaNode::Kind;
    switch (f->kind) {
      case K::True: return TriBool::True;
      case K::False: return TriBool::False;
      case K::Eq: return tri(term(f->args[0]) == term(f->args[1]));
      case K::Lt: return tri(term(f->args[0]) < term(f->args[1]));
      case K::Divides: return tri(divides_q(term(f->args[0]), term(f->args[1])));
      case K::Atom: {
        std::vector<Rational> vals;
        for (const auto& a : f->args) vals.push_back(term(a));
        return tri(atom_holds(f->name, vals));
      }
      case K::Not: return tri_not(run(f->lhs));
      case K::And: {
        TriBool a = run(f->lhs);
        if (a == TriBool::False) return a;
        TriBool b = run(f->rhs);
        if (b == TriBool::False) return b;
        return a == TriBool::True && b == TriBool::True ? TriBool::True : TriBool::Unknown;
      }
      case K::Or: {
        TriBool a = run(f->lhs);
        if (a == TriBool::True) return a;
        TriBool b = run(f->rhs);
        if (b == TriBool::True) return b;
        return a == TriBool::False && b == TriBool::False ? TriBool::False : TriBool::Unknown;
      }
      case K::Implies: {
        TriBool a = run(f->lhs);
        if (a == TriBool::False) return TriBool::True;
        TriBool b = run(f->rhs);
        if (b == TriBool::True) return b;
        return a == TriBool::True && b == TriBool::False ? TriBool::False : TriBool::Unknown;
      }
      case K::Iff: {
        TriBool a = run(f->lhs);
        if (a == TriBool::Unknown) return a;
        TriBool b = run(f->rhs);
        if (b == TriBool::Unknown) return b;
        return tri(a == b);
      }
      case K::Exists:
      case K::Forall: {
        std::vector<std::string> vars;
        Formula body = f;
        while (body->kind == f->kind) {
          if (std::find(vars.begin(), vars.end(), body->name) == vars.end()) vars.push_back(body->name);
          body = body->lhs;
        }
        std::vector<std::pair<std::string, std::optional<Rational>>> saved;
        for (const auto& v : vars) {
          auto it = env_.find(v);
          saved.emplace_back(v, it == env_.end() ? std::nullopt : std::optional<Rational>(it->second));
          if (it != env_.end()) env_.erase(it);
        }
        TriBool r = block(f->kind == K::Exists, vars, body);
        for (const auto& [v, val] : saved) {
          if (val)
            env_[v] = *val;
          else
            env_.erase(v);
        }
        return r;
      }
    }
    return TriBool::Unknown;
  }

  TriBool block(bool ex, std::vector<std::string> vars, const Formula& body) {
    if (vars.empty()) return run(body);
    std::size_t pick = 0;
    Domain dom;
    bool have = false;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      Domain d = guard(body, vars[i], ex);
      bool better = !have || (d.is_finite() && (!dom.is_finite() || d.values.size() < dom.values.size())) ||
                    (!d.is_finite() && !dom.is_finite() && d.kind < dom.kind);
      if (better) {
        pick = i;
        dom = std::move(d);
        have = true;
      }
      if (dom.is_finite() && dom.values.size() <= 1) break;
    }
    std::string v = vars[pick];
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(pick));

    std::vector<Rational> local = dom.is_finite() ? ordered(dom.values) : std::vector<Rational>{};
    const std::vector<Rational>& values = dom.is_finite() ? local : enumeration(dom.kind);
    bool unknown = !dom.is_finite();
    const TriBool decisive = ex ? TriBool::True : TriBool::False;
    TriBool result = TriBool::Unknown;
    bool done = false;
    for (const auto& val : values) {
      env_[v] = val;
      TriBool r = block(ex, vars, body);
      if (r == decisive) {
        result = decisive;
        done = true;
        break;
      }
      if (r == TriBool::Unknown) unknown = true;
    }
    env_.erase(v);
    if (done) return result;
    if (unknown) return TriBool::Unknown;
    return ex ? TriBool::False : TriBool::True;
  }

  // Finite domains are searched in the same height order as the bounded search.
  static std::vector<Rational> ordered(std::vector<Rational> v) {
    std::sort(v.begin(), v.end(), [](const Rational& a, const Rational& b) {
      if (a.height() != b.height()) return a.height() < b.height();
      if (a.num() != b.num()) return a.num() < b.num();
      return a.den() < b.den();
    });
    return v;
  }

  const std::vector<Rational>& enumeration(Domain::Kind k) {
    auto it = cache_.find(k);
    if (it == cache_.end()) {
      std::vector<Rational> v;
      if (k == Domain::Kind::Nat)
        v = integers_by_height(bound_, true);
      else if (k == Domain::Kind::Int)
        v = integers_by_height(bound_, false);
      else
        v = rationals_by_height(bound_);
      it = cache_.emplace(k, std::move(v)).first;
    }
    return it->second;
  }

  bool bound_here(const std::set<std::string>& vs) const {
    return std::all_of(vs.begin(), vs.end(), [&](const std::string& s) { return env_.contains(s); });
  }

  // Set of v outside which f is false (pos) or true (!pos), given the current
  // partial environment. v must be unbound.
  Domain guard(const Formula& f, const std::string& v, bool pos) {
    using K = FormulaNode::Kind;
    auto fv = free_vars(f);
    if (!fv.contains(v)) {
      if (!bound_here(fv)) return Domain::all();
      TriBool r = run(f);
      return r == (pos ? TriBool::False : TriBool::True) ? Domain::empty() : Domain::all();
    }
    switch (f->kind) {
      case K::Not: return guard(f->lhs, v, !pos);
      case K::And:
        return pos ? intersect(guard(f->lhs, v, pos), guard(f->rhs, v, pos))
                   : unite(guard(f->lhs, v, pos), guard(f->rhs, v, pos));
      case K::Or:
        return pos ? unite(guard(f->lhs, v, pos), guard(f->rhs, v, pos))
                   : intersect(guard(f->lhs, v, pos), guard(f->rhs, v, pos));
      case K::Implies:
        return pos ? unite(guard(f->lhs, v, !pos), guard(f->rhs, v, pos))
                   : intersect(guard(f->lhs, v, !pos), guard(f->rhs, v, pos));
      case K::Exists:
      case K::Forall: {
        auto it = env_.find(f->name);
        if (it == env_.end()) return guard(f->lhs, v, pos);
        Rational saved = it->second;
        env_.erase(it);
        Domain d = guard(f->lhs, v, pos);
        env_[f->name] = saved;
        return d;
      }
      case K::Eq: {
        if (!pos) return Domain::all();
        auto l = as_poly(f->args[0], v, env_);
        auto r = l ? as_poly(f->args[1], v, env_) : std::nullopt;
        if (!l || !r) return Domain::all();
        Poly p = detail::padd(*l, *r, -1);
        // Only linear equations restrict the search: an unsolvable higher-degree
        // equation stays open, as a bounded search cannot refute it.
        if (p.empty() || p.size() > 2) return Domain::all();
        auto roots = rational_roots(p);
        return roots ? Domain::finite(*roots) : Domain::all();
      }
      case K::Divides: return pos ? divides_guard(f->args[0], f->args[1], v) : Domain::all();
      case K::Atom: return pos ? atom_guard(*f, v) : Domain::all();
      default: return Domain::all();
    }
  }

  static bool is_var(const Term& t, const std::string& v) { return t->kind == TermNode::Kind::Var && t->name == v; }

  Domain divides_guard(const Term& a, const Term& b, const std::string& v) const {
    if (is_var(a, v)) {
      auto s = try_term(b);
      if (!s) return Domain::integers();
      if (!s->is_integer()) return Domain::empty();
      if (s->is_zero()) return Domain::integers();
      try {
        std::vector<Rational> ds;
        for (const auto& d : detail::positive_divisors(s->num())) {
          ds.emplace_back(d);
          ds.emplace_back(-d);
        }
        return Domain::finite(std::move(ds));
      } catch (const Error&) {
        return Domain::integers();
      }
    }
    if (is_var(b, v)) {
      auto s = try_term(a);
      if (!s) return Domain::integers();
      if (!s->is_integer()) return Domain::empty();
      if (s->is_zero()) return Domain::finite({Rational(0)});
      return Domain::integers();
    }
    return Domain::all();
  }

  Domain e_guard(const std::vector<std::optional<Rational>>& v, std::size_t slot) const {
    // v = (a, b, x, y, z)
    if (v[0] && v[1] && (Rational(4) * *v[0] * *v[0] * *v[0] + Rational(27) * *v[1] * *v[1]).is_zero())
      return Domain::empty();
    const auto& z = v[4];
    if (slot == 4) return Domain::finite({Rational(0), Rational(1)});
    if (z && !z->is_zero() && *z != Rational(1)) return Domain::empty();
    bool z0 = !z || z->is_zero();
    bool z1 = !z || *z == Rational(1);
    if (slot == 2) {
      std::vector<Rational> out;
      if (z0) out.emplace_back(0);
      if (z1) {
        if (!v[0] || !v[1] || !v[3]) return Domain::all();
        auto roots = rational_roots(Poly{*v[1] - *v[3] * *v[3], *v[0], Rational(0), Rational(1)});
        if (!roots) return Domain::all();
        out.insert(out.end(), roots->begin(), roots->end());
      }
      return Domain::finite(std::move(out));
    }
    if (slot == 3) {
      std::vector<Rational> out;
      if (z0) out.emplace_back(1);
      if (z1) {
        if (!v[0] || !v[1] || !v[2]) return Domain::all();
        Rational r = *v[2] * *v[2] * *v[2] + *v[0] * *v[2] + *v[1];
        if (r.signum() >= 0) {
          auto sn = exact_sqrt(r.num());
          auto sd = exact_sqrt(r.den());
          if (sn && sd) {
            out.emplace_back(*sn, *sd);
            out.emplace_back(-*sn, *sd);
          }
        }
      }
      return Domain::finite(std::move(out));
    }
    return Domain::all();
  }

  Domain atom_guard(const FormulaNode& f, const std::string& v) const {
    std::vector<std::optional<Rational>> vals;
    std::size_t slot = f.args.size();
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      vals.push_back(try_term(f.args[i]));
      if (slot == f.args.size() && is_var(f.args[i], v)) slot = i;
    }
    if (slot == f.args.size()) return Domain::all();
    const std::string& n = f.name;
    if (n == "Z") return Domain::integers();
    if (n == "N" || n == "P" || n == "pw") return Domain::nat();
    if (n == "pw'") return slot == 0 ? Domain::nat() : Domain::all();
    if (n == "d_p" || n == "d_p'") {
      if (slot == 0) return Domain::nat();
      if (slot == 1) return n == "d_p" ? Domain::integers() : Domain::all();
      if (!vals[0] || !vals[1]) return n == "d_p" ? Domain::nat() : Domain::all();
      if (n == "d_p'") {
        auto y = d_p_prime_value(*vals[0], *vals[1]);
        return y ? Domain::finite({*y}) : Domain::empty();
      }
      const Rational& p = *vals[0];
      const Rational& x = *vals[1];
      if (!x.is_integer()) return Domain::empty();
      if (is_nat(p) && !x.is_zero() && is_prime(p.num()))
        return Domain::finite({Rational(p.num()).pow(integer_valuation(p.num(), x.num()))});
      return Domain::nat();
    }
    if (n == "E") return e_guard(vals, slot);
    if (n == "addE") {
      if (slot < 2) return Domain::all();
      std::size_t pt = (slot - 2) / 3;
      auto known = [&](std::size_t j) { return vals[2 + 3 * j] && vals[3 + 3 * j] && vals[4 + 3 * j]; };
      auto triple = [&](std::size_t j) {
        return std::array<Rational, 3>{*vals[2 + 3 * j], *vals[3 + 3 * j], *vals[4 + 3 * j]};
      };
      if (vals[0] && vals[1]) {
        std::size_t o1 = pt == 0 ? 1 : 0;
        std::size_t o2 = pt == 2 ? 1 : 2;
        if (known(o1) && known(o2)) {
          if ((Rational(4) * *vals[0] * *vals[0] * *vals[0] + Rational(27) * *vals[1] * *vals[1]).is_zero())
            return Domain::empty();
          auto t1 = triple(o1);
          auto t2 = triple(o2);
          // pt 2: X + Y; pt 0: Z - Y; pt 1: Z - X.
          auto r = pt == 2 ? add_triples(*vals[0], *vals[1], t1, t2) : add_triples(*vals[0], *vals[1], t2, t1, true);
          if (!r) return Domain::empty();
          return Domain::finite({(*r)[(slot - 2) % 3]});
        }
      }
      std::vector<std::optional<Rational>> ev{vals[0], vals[1], vals[2 + 3 * pt], vals[3 + 3 * pt], vals[4 + 3 * pt]};
      return e_guard(ev, 2 + (slot - 2) % 3);
    }
    return Domain::all();
  }

  long long bound_;
  Environment env_;
  std::map<Domain::Kind, std::vector<Rational>> cache_;
};

/// Evaluates f with quantifiers ranging over rationals of height <= height_bound.
inline TriBool eval(const Formula& f, const Environment& env, long long height_bound) {
  return Evaluator(height_bound).eval(f, env);
}

}  // namespace hyperarith::formula
