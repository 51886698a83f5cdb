#pragma once

#include <map>
#include <string>
#include <string_view>

#include "hyperarith/formula/ast.hpp"
#include "hyperarith/lexer.hpp"

namespace hyperarith::formula {

/// Oracle-backed predicates and their arities.
inline const std::map<std::string, std::size_t, std::less<>>& atom_arities() {
  static const std::map<std::string, std::size_t, std::less<>> table{
      {"Z", 1},   {"N", 1},    {"P", 1},  {"pw", 2}, {"pw'", 2},
      {"d_p", 3}, {"d_p'", 3}, {"lt", 2}, {"E", 5},  {"addE", 11},
  };
  return table;
}

inline bool is_keyword(std::string_view s) {
  return s == "exists" || s == "forall" || s == "or" || s == "true" || s == "false";
}

/// [a-z][a-z0-9_]* and not a keyword.
inline bool is_variable_name(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z' || is_keyword(s)) return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  return true;
}

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : cur_(tokenize(text)) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (!cur_.at_end()) cur_.fail("unexpected trailing input");
    return f;
  }

  Term parse_term_all() {
    Term t = parse_term();
    if (!cur_.at_end()) cur_.fail("unexpected trailing input");
    return t;
  }

 private:
  Formula parse_iff() {
    Formula l = parse_implies();
    while (cur_.accept_symbol("<->")) l = iff(l, parse_implies());
    return l;
  }

  Formula parse_implies() {
    Formula l = parse_or();
    if (cur_.accept_symbol("->")) return implies(l, parse_implies());
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (cur_.at_ident("or")) {
      cur_.next();
      l = disjunction(l, parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (cur_.accept_symbol("&")) l = conjunction(l, parse_unary());
    return l;
  }

  Formula parse_unary() {
    if (cur_.accept_symbol("!")) return negation(parse_unary());
    if (cur_.at_ident("exists") || cur_.at_ident("forall")) {
      bool ex = cur_.next().text == "exists";
      std::vector<std::string> vars;
      do {
        const Token& t = cur_.peek();
        if (t.kind != Token::Kind::Ident || !is_variable_name(t.text)) cur_.fail("expected a bound variable");
        vars.push_back(cur_.next().text);
      } while (cur_.accept_symbol(","));
      cur_.expect_symbol(".");
      Formula body = parse_iff();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = ex ? exists(*it, body) : forall(*it, body);
      return body;
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& t = cur_.peek();
    if (t.kind == Token::Kind::Ident && (t.text == "true" || t.text == "false")) {
      cur_.next();
      return t.text == "true" ? top() : bottom();
    }
    if (t.kind == Token::Kind::Ident && cur_.at_symbol("(", 1) && !is_variable_name(t.text) &&
        !atom_arities().contains(t.text))
      cur_.fail("unknown predicate");
    if (t.kind == Token::Kind::Ident && cur_.at_symbol("(", 1) && atom_arities().contains(t.text)) return parse_atom();
    if (cur_.at_symbol("(")) {
      std::size_t save = cur_.position();
      try {
        return parse_relation();
      } catch (const SyntaxError&) {
        cur_.reset(save);
      }
      cur_.expect_symbol("(");
      Formula f = parse_iff();
      cur_.expect_symbol(")");
      return f;
    }
    return parse_relation();
  }

  Formula parse_atom() {
    Token name = cur_.next();
    cur_.expect_symbol("(");
    std::vector<Term> args;
    if (!cur_.at_symbol(")")) {
      do {
        args.push_back(parse_term());
      } while (cur_.accept_symbol(","));
    }
    cur_.expect_symbol(")");
    std::size_t want = atom_arities().find(name.text)->second;
    if (args.size() != want)
      throw Error(ErrorCode::ArityError, name.text + " expects " + std::to_string(want) + " arguments, got " +
                                             std::to_string(args.size()) + " at line " + std::to_string(name.line) +
                                             ", column " + std::to_string(name.column));
    return atom(name.text, std::move(args));
  }

  Formula parse_relation() {
    Term l = parse_term();
    if (cur_.accept_symbol("=")) return eq(l, parse_term());
    if (cur_.accept_symbol("!=")) return neq(l, parse_term());
    if (cur_.accept_symbol("<")) return lt(l, parse_term());
    if (cur_.accept_symbol(">")) return lt(parse_term(), l);
    if (cur_.accept_symbol("|")) return divides(l, parse_term());
    cur_.fail("expected a relation");
  }

  Term parse_term() {
    Term l = parse_mul();
    for (;;) {
      if (cur_.accept_symbol("+"))
        l = l + parse_mul();
      else if (cur_.accept_symbol("-"))
        l = l - parse_mul();
      else
        return l;
    }
  }

  Term parse_mul() {
    Term l = parse_neg();
    while (cur_.accept_symbol("*")) l = l * parse_neg();
    return l;
  }

  Term parse_neg() {
    if (cur_.at_symbol("-")) {
      // "-7" is a literal unless it is the base of a power.
      if (cur_.peek(1).kind == Token::Kind::Number && !cur_.at_symbol("^", 2)) {
        cur_.next();
        return num(-parse_integer(cur_.next().text));
      }
      cur_.next();
      return -parse_neg();
    }
    return parse_pow();
  }

  Term parse_pow() {
    Term base = parse_term_primary();
    if (cur_.accept_symbol("^")) {
      const Token& e = cur_.peek();
      if (e.kind != Token::Kind::Number) cur_.fail("expected a literal exponent");
      Integer v = parse_integer(cur_.next().text);
      if (v > 64) throw SyntaxError("exponent too large", e.line, e.column);
      return pow(base, static_cast<unsigned>(v));
    }
    return base;
  }

  Term parse_term_primary() {
    const Token& t = cur_.peek();
    if (t.kind == Token::Kind::Number) return num(parse_integer(cur_.next().text));
    if (t.kind == Token::Kind::Ident) {
      if (!is_variable_name(t.text)) cur_.fail("expected a variable");
      return var(cur_.next().text);
    }
    if (cur_.accept_symbol("(")) {
      Term inner = parse_term();
      cur_.expect_symbol(")");
      return inner;
    }
    cur_.fail("expected a term");
  }

  TokenCursor cur_;
};

inline int term_prec(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::Add:
    case TermNode::Kind::Sub: return 1;
    case TermNode::Kind::Mul: return 2;
    case TermNode::Kind::Neg: return 3;
    case TermNode::Kind::Pow: return 4;
    case TermNode::Kind::Num: return t->value < 0 ? 3 : 5;
    case TermNode::Kind::Var: return 5;
  }
  return 5;
}

inline std::string print_term(const Term& t, int need);

inline std::string wrap_term(const Term& t, int need) {
  std::string s = print_term(t, 0);
  return term_prec(t) < need ? "(" + s + ")" : s;
}

inline std::string print_term(const Term& t, int /*need*/) {
  switch (t->kind) {
    case TermNode::Kind::Var: return t->name;
    case TermNode::Kind::Num: return t->value.str();
    case TermNode::Kind::Add: return wrap_term(t->lhs, 1) + " + " + wrap_term(t->rhs, 2);
    case TermNode::Kind::Sub: return wrap_term(t->lhs, 1) + " - " + wrap_term(t->rhs, 2);
    case TermNode::Kind::Mul: return wrap_term(t->lhs, 2) + " * " + wrap_term(t->rhs, 3);
    case TermNode::Kind::Neg:
      if (t->lhs->kind == TermNode::Kind::Num) return "-(" + print_term(t->lhs, 0) + ")";
      return "-" + wrap_term(t->lhs, 3);
    case TermNode::Kind::Pow: return wrap_term(t->lhs, 5) + "^" + std::to_string(t->exponent);
  }
  return {};
}

inline int formula_prec(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Iff: return 1;
    case FormulaNode::Kind::Implies: return 2;
    case FormulaNode::Kind::Or: return 3;
    case FormulaNode::Kind::And: return 4;
    case FormulaNode::Kind::Not: return 5;
    case FormulaNode::Kind::Exists:
    case FormulaNode::Kind::Forall: return 0;
    default: return 6;
  }
}

inline std::string print_formula(const Formula& f);

inline std::string wrap(const Formula& f, int need) {
  std::string s = print_formula(f);
  return formula_prec(f) < need ? "(" + s + ")" : s;
}

inline bool is_relation(const Formula& f) {
  return f->kind == FormulaNode::Kind::Eq || f->kind == FormulaNode::Kind::Lt ||
         f->kind == FormulaNode::Kind::Divides;
}

inline std::string print_formula(const Formula& f) {
  using K = FormulaNode::Kind;
  switch (f->kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Eq: return print_term(f->args[0], 0) + " = " + print_term(f->args[1], 0);
    case K::Lt: return print_term(f->args[0], 0) + " < " + print_term(f->args[1], 0);
    case K::Divides: return print_term(f->args[0], 0) + " | " + print_term(f->args[1], 0);
    case K::Atom: {
      std::string s = f->name + "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) s += (i ? ", " : "") + print_term(f->args[i], 0);
      return s + ")";
    }
    case K::Not: return is_relation(f->lhs) ? "!(" + print_formula(f->lhs) + ")" : "!" + wrap(f->lhs, 5);
    case K::And: return wrap(f->lhs, 4) + " & " + wrap(f->rhs, 5);
    case K::Or: return wrap(f->lhs, 3) + " or " + wrap(f->rhs, 4);
    case K::Implies: return wrap(f->lhs, 3) + " -> " + wrap(f->rhs, 2);
    case K::Iff: return wrap(f->lhs, 1) + " <-> " + wrap(f->rhs, 2);
    case K::Exists: return "exists " + f->name + ". " + print_formula(f->lhs);
    case K::Forall: return "forall " + f->name + ". " + print_formula(f->lhs);
  }
  return {};
}

}  // namespace detail

/// Parses formula text; throws SyntaxError (with position) or ArityError.
inline Formula parse(std::string_view text) { return detail::Parser(text).parse_all(); }

inline Term parse_term(std::string_view text) { return detail::Parser(text).parse_term_all(); }

inline std::string to_string(const Formula& f) { return detail::print_formula(f); }
inline std::string to_string(const Term& t) { return detail::print_term(t, 0); }

}  // namespace hyperarith::formula
