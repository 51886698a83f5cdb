#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>

#include "hyperarith/elliptic/dataset.hpp"
#include "hyperarith/formula/builtins.hpp"

using namespace hyperarith;
using namespace hyperarith::formula;

namespace {

TriBool ev(std::string_view text, Environment env, long long bound = 10) { return eval(parse(text), env, bound); }

TriBool ev_builtin(std::string_view name, std::vector<Rational> args, long long bound = 10) {
  auto b = builtin_def(name);
  return eval(b.formula, bind_args(b, args), bound);
}

Rational q(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

}  // namespace

TEST_CASE("parse shapes") {
  auto f = parse("Z(x) & x | y");
  REQUIRE(f->kind == FormulaNode::Kind::And);
  CHECK(f->lhs->kind == FormulaNode::Kind::Atom);
  CHECK(f->lhs->name == "Z");
  CHECK(f->rhs->kind == FormulaNode::Kind::Divides);
  auto g = parse("exists y. y*y = x");
  CHECK(g->kind == FormulaNode::Kind::Exists);
  CHECK(g->name == "y");
  CHECK(free_vars(g) == std::set<std::string>{"x"});
  CHECK(parse("!a = b & c = d")->kind == FormulaNode::Kind::And);
  CHECK(parse("a = b or c = d & e = f")->kind == FormulaNode::Kind::Or);
  CHECK(parse("a = b -> c = d -> e = f")->rhs->kind == FormulaNode::Kind::Implies);
  CHECK(parse("a = b <-> c = d -> e = f")->kind == FormulaNode::Kind::Iff);
  CHECK(parse("(a = b)")->kind == FormulaNode::Kind::Eq);
  CHECK(parse("(x + 1) * y = 3")->kind == FormulaNode::Kind::Eq);
  CHECK(parse("x != y")->kind == FormulaNode::Kind::Not);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse("x = ");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
  try {
    parse("Z(x) &\n  y ? 2");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse("exists . x = 1"), SyntaxError);
  CHECK_THROWS_AS(parse("foo(x)"), SyntaxError);
  CHECK_THROWS_AS(parse("x = 1)"), SyntaxError);
  try {
    parse("pw(x)");
    FAIL("expected ArityError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArityError);
  }
}

TEST_CASE("printing round-trips the grammar corpus") {
  std::ifstream in(std::string(HYPERARITH_SOURCE_DIR) + "/tests/data/grammar_corpus.txt");
  REQUIRE(in);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    INFO(line);
    Formula f = parse(line);
    std::string printed = to_string(f);
    INFO(printed);
    CHECK(equal(parse(printed), f));
    CHECK(to_string(parse(printed)) == printed);
    ++n;
  }
  CHECK(n >= 30);
  for (const auto& name : {"Z", "N", "N'", "divides", "P", "pw", "pw'", "d_p", "d_p'", "lt", "E", "addE",
                           "addE_verbatim", "nE(2)", "nE(3)", "simEn(2)"}) {
    Formula f = builtin(name);
    CHECK(equal(parse(to_string(f)), f));
  }
}

TEST_CASE("evaluation examples") {
  CHECK(ev("exists y. y*y = x", {{"x", 4}}) == TriBool::True);
  CHECK(ev("N(x)", {{"x", -1}}) == TriBool::False);
  CHECK(ev("exists y. y*y = x", {{"x", 2}}, 50) == TriBool::Unknown);
  CHECK(ev("forall y. y*y != x", {{"x", 2}}, 50) == TriBool::Unknown);
  CHECK(ev("exists y. Z(y) & y*y = x", {{"x", 2}}) == TriBool::Unknown);
  CHECK(ev("exists y. 3 * y = x & Z(y)", {{"x", 2}}) == TriBool::False);  // linear guard
  CHECK(ev("forall y. y | 6 -> y < 7", {}) == TriBool::True);
  CHECK(ev("exists y. y = x + 1000", {{"x", 1}}, 2) == TriBool::True);  // solved, beyond the bound
  CHECK(ev("exists y. 2 < y & y < 3", {}, 5) == TriBool::True);
  CHECK(ev("x = 1 <-> !(x != 1)", {{"x", 1}}) == TriBool::True);
  try {
    ev("x = y", {{"x", 1}});
    FAIL("expected UnboundVariable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnboundVariable);
  }
}

TEST_CASE("Kleene connectives") {
  const char* unk = "(exists y. y*y = 2)";
  Environment none;
  CHECK(eval(parse(std::string(unk) + " & false"), none, 5) == TriBool::False);
  CHECK(eval(parse(std::string(unk) + " or true"), none, 5) == TriBool::True);
  CHECK(eval(parse(std::string(unk) + " & true"), none, 5) == TriBool::Unknown);
  CHECK(eval(parse(std::string("false -> ") + unk), none, 5) == TriBool::True);
  CHECK(eval(parse(std::string("!") + unk), none, 5) == TriBool::Unknown);
}

TEST_CASE("builtin examples") {
  CHECK(ev_builtin("P", {7}) == TriBool::True);
  CHECK(ev_builtin("E", {-1, 0, 0, 0, 1}) == TriBool::True);
  CHECK(ev_builtin("E", {-1, 0, 0, 1, 0}) == TriBool::True);
  for (auto pt : std::vector<std::vector<Rational>>{{0, 0, 1}, {0, 1, 0}, {1, 1, 1}, {2, 3, 1}})
    CHECK(ev_builtin("E", {0, 0, pt[0], pt[1], pt[2]}) == TriBool::False);
  CHECK_THROWS_AS(builtin("nope"), Error);
  try {
    builtin("nE(1)");
    FAIL("expected BadParameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadParameter);
  }
  CHECK(ev_builtin("divides", {3, 12}) == TriBool::True);
  CHECK(ev_builtin("divides", {0, 0}) == TriBool::True);
  CHECK(ev_builtin("divides", {0, 5}) == TriBool::False);
  CHECK(ev_builtin("divides", {5, 12}) == TriBool::False);
  CHECK(ev_builtin("pw", {2, 8}) == TriBool::True);
  CHECK(ev_builtin("pw", {2, 12}) == TriBool::False);
  CHECK(ev_builtin("pw'", {2, q(1, 8)}) == TriBool::True);
  CHECK(ev_builtin("d_p", {3, 18, 9}) == TriBool::True);
  CHECK(ev_builtin("d_p", {3, 18, 3}) == TriBool::False);
  CHECK(ev_builtin("d_p'", {2, q(3, 4), q(1, 4)}) == TriBool::True);
  CHECK(ev_builtin("d_p'", {2, 0, 1}) == TriBool::False);
  CHECK(ev_builtin("lt", {q(1, 3), q(1, 2)}) == TriBool::True);
  CHECK(ev_builtin("lt", {-2, q(-3, 2)}) == TriBool::True);
  CHECK(ev_builtin("N'", {7}) == TriBool::True);
}

TEST_CASE("builtin atoms agree with exact arithmetic") {
  auto p = builtin_def("P");
  for (int n = -500; n <= 500; ++n) {
    INFO(n);
    CHECK(eval(p.formula, bind_args(p, {n}), 10) == tri(is_prime(n)));
  }
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> small(-30, 30);
  std::uniform_int_distribution<int> den(1, 4);
  auto z = builtin_def("Z");
  auto nn = builtin_def("N");
  auto dv = builtin_def("divides");
  auto pw = builtin_def("pw");
  for (int i = 0; i < 300; ++i) {
    Rational x = q(small(rng), den(rng));
    Rational y = q(small(rng), den(rng));
    CHECK(eval(z.formula, bind_args(z, {x}), 5) == tri(x.is_integer()));
    CHECK(eval(nn.formula, bind_args(nn, {x}), 5) == tri(is_nat(x)));
    CHECK(eval(dv.formula, bind_args(dv, {x, y}), 5) == tri(divides_q(x, y)));
  }
  for (int x = -3; x <= 30; ++x)
    for (int y = -3; y <= 70; ++y) {
      TriBool r = eval(pw.formula, bind_args(pw, {x, y}), 8);
      INFO(x << " " << y);
      if (y == 0 && x == 1) {
        CHECK(r == TriBool::Unknown);  // every natural is a multiple of 1: no refutation exists
      } else {
        CHECK(r == tri(pw_holds(x, y)));
      }
      if (x >= 2 && is_prime(x) && y >= 1) CHECK(pw_holds(x, y) == is_prime_power(x, y));
    }
}

TEST_CASE("quantifier results are stable as the bound grows") {
  std::vector<std::pair<std::string, Environment>> cases{
      {"exists y. y*y = x", {{"x", 4}}},
      {"exists y. y*y = x", {{"x", q(9, 16)}}},
      {"exists y. y*y = x", {{"x", 2}}},
      {"forall y. Z(y) -> y*y != x", {{"x", 3}}},
      {"exists y. 3*y = x & Z(y)", {{"x", 12}}},
      {"exists y, z. y < z & z < y + x", {{"x", q(1, 5)}}},
      {"forall y. y | 12 -> y < 13", {}},
  };
  for (const auto& [text, env] : cases) {
    Formula f = parse(text);
    TriBool first = TriBool::Unknown;
    for (long long h = 1; h <= 12; ++h) {
      TriBool r = eval(f, env, h);
      if (first != TriBool::Unknown) CHECK(r == first);
      if (r != TriBool::Unknown) first = r;
    }
  }
}

TEST_CASE("addE formula agrees with chord-tangent addition") {
  using namespace hyperarith::elliptic;
  auto recs = load_dataset_file(HYPERARITH_DEFAULT_DATASET);
  auto b = builtin_def("addE");
  std::mt19937_64 rng(4242);
  for (const auto& r : recs) {
    const Curve& c = r.data.curve;
    std::vector<CurvePoint> pool = r.data.torsion;
    for (const auto& g : r.data.generators)
      for (int k = -2; k <= 2; ++k)
        for (const auto& t : r.data.torsion) pool.push_back(add(c, smul(c, k, g), t));
    for (int i = 0; i < 50; ++i) {
      CurvePoint p = pool[rng() % pool.size()];
      CurvePoint s = pool[rng() % pool.size()];
      CurvePoint sum = add(c, p, s);
      CurvePoint wrong = pool[rng() % pool.size()];
      auto args = [&](const CurvePoint& z) {
        std::vector<Rational> v{c.a(), c.b()};
        for (const CurvePoint* pt : std::array<const CurvePoint*, 3>{&p, &s, &z})
          for (const auto& coord : pt->triple()) v.push_back(coord);
        return v;
      };
      CHECK(eval(b.formula, bind_args(b, args(sum)), 1) == TriBool::True);
      CHECK(eval(b.formula, bind_args(b, args(wrong)), 1) == tri(wrong == sum));
      CHECK(atom_holds("addE", args(sum)));
    }
  }
}

TEST_CASE("printed addE differs from the group law") {
  // (2,3) doubled on y^2 = x^3 + 1 is (0,1); the verbatim slope uses y0 = x-coordinate of the second point.
  auto b = builtin_def("addE_verbatim");
  std::vector<Rational> args{0, 1, 2, 3, 1, 2, 3, 1, 0, 1, 1};
  auto c = builtin_def("addE");
  CHECK(eval(c.formula, bind_args(c, args), 1) == TriBool::True);
  // The disjunction of implications is vacuous whenever some antecedent fails.
  std::vector<Rational> bogus{0, 1, 2, 3, 1, 2, 3, 1, 2, -3, 1};
  CHECK(eval(c.formula, bind_args(c, bogus), 1) == TriBool::False);
  CHECK(eval(b.formula, bind_args(b, bogus), 1) == TriBool::True);
}

TEST_CASE("nE agrees with scalar multiples on torsion") {
  using namespace hyperarith::elliptic;
  for (auto [a, bb] : std::vector<std::pair<int, int>>{{0, 1}, {-1, 0}, {0, 9}}) {
    Curve c(a, bb);
    auto tors = torsion_points(c);
    for (int k : {2, 3}) {
      auto b = builtin_def("nE(" + std::to_string(k) + ")");
      for (const auto& target : tors) {
        bool expect = false;
        for (const auto& p : tors)
          if (smul(c, k, p) == target) expect = true;
        std::vector<Rational> args{c.a(), c.b()};
        for (const auto& coord : target.triple()) args.push_back(coord);
        TriBool r = eval(b.formula, bind_args(b, args), 3);
        INFO(c.str() << " k=" << k << " target " << target.str());
        if (expect)
          CHECK(r == TriBool::True);
        else
          CHECK(r != TriBool::True);
      }
    }
  }
}

TEST_CASE("simEn relates a point to itself") {
  auto b = builtin_def("simEn(2)");
  std::vector<Rational> args{0, 1, 2, 3, 1, 2, 3, 1};
  CHECK(eval(b.formula, bind_args(b, args), 2) == TriBool::True);
}
