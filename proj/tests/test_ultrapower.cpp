#include <catch_amalgamated.hpp>

#include <random>

#include "hyperarith/formula/parser.hpp"
#include "hyperarith/ultra/module.hpp"
#include "hyperarith/ultra/truth_set.hpp"

using namespace hyperarith;
using namespace hyperarith::ultra;
using formula::TriBool;

namespace {

PeriodicSet evens() { return PeriodicSet::residue_class(0, 2); }
PeriodicSet odds() { return PeriodicSet::residue_class(1, 2); }

PeriodicSet random_set(std::mt19937_64& rng) {
  Index m = 1 + rng() % 12;
  std::vector<bool> r(m);
  for (Index k = 0; k < m; ++k) r[k] = rng() % 2;
  if (rng() % 5 == 0) std::fill(r.begin(), r.end(), rng() % 2 == 0);
  std::set<Index> plus;
  std::set<Index> minus;
  for (int j = 0; j < 3; ++j) plus.insert(rng() % 30);
  for (int j = 0; j < 3; ++j) minus.insert(rng() % 30);
  return {m, r, plus, minus};
}

SeqExpr random_seq(std::mt19937_64& rng) {
  switch (rng() % 5) {
    case 0: return seq_const(static_cast<long long>(rng() % 11) - 5);
    case 1: return seq_index();
    case 2: return seq_add(seq_mul(seq_const(static_cast<long long>(rng() % 5) - 2), seq_pow(seq_index(), 2)),
                           seq_const(static_cast<long long>(rng() % 7) - 3));
    case 3: return seq_exp(2 + rng() % 3);
    default: return seq_sub(seq_index(), seq_const(static_cast<long long>(rng() % 9)));
  }
}

formula::Formula parse(const std::string& s) { return formula::parse(s); }

const char* const kShapes[] = {
    "x = y",         "x < y",          "2 | x",       "3 | x + y",   "Z(x)",          "N(x - y)",
    "x * x < y + 3", "!(x = y) & 2 | y", "x < y or y < x", "5 | x * y - 1", "N(x) -> 4 | x*x", "x = 0 <-> y = 0",
};

}  // namespace

TEST_CASE("periodic set algebra examples") {
  CHECK(intersect(evens(), odds()).is_empty());
  CHECK(unite(evens(), odds()).is_all());
  auto c = PeriodicSet::finite({1, 2}).complement();
  CHECK(c.is_cofinite());
  CHECK(!c.member(1));
  CHECK(c.member(3));
  CHECK(PeriodicSet::finite({1, 2}).is_finite());
  // canonical form shrinks the modulus
  CHECK(PeriodicSet(4, {true, false, true, false}, {}, {}) == evens());
  CHECK(PeriodicSet::from_json(evens().to_json()) == evens());
}

TEST_CASE("periodic set operations agree with brute-force membership") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    PeriodicSet a = random_set(rng);
    PeriodicSet b = random_set(rng);
    auto u = unite(a, b);
    auto n = intersect(a, b);
    auto c = a.complement();
    Index top = 10 * std::lcm(a.modulus(), b.modulus()) + 40;
    for (Index i = 0; i < top; ++i) {
      REQUIRE(u.member(i) == (a.member(i) || b.member(i)));
      REQUIRE(n.member(i) == (a.member(i) && b.member(i)));
      REQUIRE(c.member(i) == !a.member(i));
    }
  }
}

TEST_CASE("oracle examples") {
  auto lazy = UltrafilterOracle::lazy_generic();
  CHECK(lazy.decides(evens()));
  CHECK(lazy.commitment() == std::pair<Index, Index>{0, 2});
  CHECK(!lazy.decides(odds()));
  CHECK(!lazy.decides(PeriodicSet::finite({3, 7})));
  auto p = UltrafilterOracle::principal(5);
  CHECK(!p.decides(PeriodicSet::finite({3, 7})));
  CHECK(p.decides(PeriodicSet::residue_class(0, 5)));
}

TEST_CASE("ultrafilter laws over adversarial query sequences") {
  std::mt19937_64 rng(77);
  for (int seq = 0; seq < 1000; ++seq) {
    auto u = UltrafilterOracle::lazy_generic();
    std::vector<PeriodicSet> accepted;
    for (int q = 0; q < 8; ++q) {
      PeriodicSet s = random_set(rng);
      bool a = u.decides(s);
      bool b = u.decides(s.complement());
      REQUIRE(a != b);
      if (s.is_cofinite()) REQUIRE(a);
      if (s.is_finite()) REQUIRE(!a);
      accepted.push_back(a ? s : s.complement());
    }
    for (std::size_t i = 0; i < accepted.size(); ++i) {
      for (std::size_t j = i; j < accepted.size(); ++j) REQUIRE(u.decides(intersect(accepted[i], accepted[j])));
      REQUIRE(u.decides(unite(accepted[i], random_set(rng))));
    }
    // paired parity queries
    bool even = u.decides(evens());
    REQUIRE(even != u.decides(odds()));
  }
}

TEST_CASE("oracle logs replay identically") {
  std::mt19937_64 rng(3);
  auto u = UltrafilterOracle::lazy_generic();
  for (int q = 0; q < 50; ++q) u.decides(random_set(rng));
  auto log = u.log_json();
  auto again = UltrafilterOracle::replay(log);
  CHECK(again.log_json().dump() == log.dump());
  auto bad = log;
  bad["decisions"][0][1] = !bad["decisions"][0][1].get<bool>();
  try {
    UltrafilterOracle::replay(bad);
    FAIL("expected a mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OracleReplayMismatch);
  }
}

TEST_CASE("truth sets") {
  HyperEnv omega{{"x", HyperRational(seq_index())}};
  CHECK(truth_set(parse("2 | x"), omega) == evens());
  auto grow = truth_set(parse("x*x > x"), omega);
  CHECK(grow == PeriodicSet::from(2));
  HyperEnv two{{"x", HyperRational(seq_index())}, {"y", parse_hyper("i*i + 1")}};
  try {
    truth_set(parse("x | y"), two);
    FAIL("expected UnsupportedTruthSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedTruthSet);
  }
  // i^3 < 2^i fails exactly on 2..9
  CHECK(truth_set(parse("x < y"), {{"x", parse_hyper("i^3")}, {"y", parse_hyper("2^i")}}) ==
        unite(PeriodicSet::from(10), PeriodicSet::finite({0, 1})));
  CHECK_THROWS_AS(truth_set(parse("exists y. y = x"), omega), Error);
  CHECK_THROWS_AS(truth_set(parse("P(x)"), omega), Error);
}

TEST_CASE("denominators vanishing at finitely many indices") {
  // x = 1/(i - 3): component 0 at i = 3 by convention
  HyperEnv env{{"x", parse_hyper("1/(i - 3)")}};
  auto s = truth_set(parse("x = 0"), env);
  CHECK(s == PeriodicSet::finite({3}));
  for (const char* src : {"x < 1", "x * x < 1 & x != 0", "2 * x = -1"}) {
    auto z = truth_set(parse(src), env);
    for (Index i = 0; i < 40; ++i) CHECK(z.member(i) == (componentwise(parse(src), env, i) == TriBool::True));
  }
  CHECK(truth_set(parse("Z(x)"), {{"x", parse_hyper("(i + 1)/3")}}) == PeriodicSet::residue_class(2, 3));
  CHECK_THROWS_AS(HyperRational(seq_index(), seq_const(0)), Error);
}

TEST_CASE("Łoś with principal oracles matches the coordinate") {
  std::mt19937_64 rng(2718);
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    auto f = parse(kShapes[rng() % std::size(kShapes)]);
    HyperEnv env{{"x", HyperRational(random_seq(rng))}, {"y", HyperRational(random_seq(rng))}};
    Index i0 = rng() % 60;
    auto u = UltrafilterOracle::principal(i0);
    bool truth = componentwise(f, env, i0) == TriBool::True;
    REQUIRE(los_eval(u, f, env) == truth);
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("Łoś examples") {
  HyperEnv omega{{"x", HyperRational(seq_index())}};
  auto lazy = UltrafilterOracle::lazy_generic();
  CHECK(los_eval(lazy, parse("x = x"), omega));
  bool a = los_eval(lazy, parse("2 | x"), omega);
  bool b = los_eval(lazy, parse("2 | x + 1"), omega);
  CHECK(a != b);
  auto p4 = UltrafilterOracle::principal(4);
  CHECK(los_eval(p4, parse("2 | x"), omega));
}

TEST_CASE("hyperrational arithmetic") {
  HyperEnv env{{"a", hadd(parse_hyper("i"), parse_hyper("i"))}, {"b", parse_hyper("2*i")},
               {"c", hdiv(parse_hyper("i^2"), parse_hyper("i"))}, {"d", parse_hyper("i")}};
  CHECK(truth_set(parse("a = b"), env).is_all());
  // c vanishes at i = 0 by the zero-denominator convention, as does d
  CHECK(truth_set(parse("c = d"), env).is_all());
  CHECK(truth_set(parse("c = d + 1"), env).is_empty());
  try {
    hdiv(parse_hyper("i"), parse_hyper("0"));
    FAIL("expected DivisorVanishesCofinally");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisorVanishesCofinally);
  }
  CHECK(hsub(parse_hyper("i"), parse_hyper("i")).at(7) == 0);
  CHECK(hmul(parse_hyper("i"), parse_hyper("1/i")).at(7) == 1);
}

TEST_CASE("hyper valuations") {
  CHECK(to_string(hyper_dp(2, parse_hyper("2^i"))) == "i");
  CHECK(to_string(hyper_dp(3, parse_hyper("9"))) == "2");
  CHECK(to_string(hyper_dp(2, parse_hyper("12 * 4^i / 3"))) == "2 * i + 2");
  CHECK(to_string(hyper_dp(5, parse_hyper("1/(25 * 10^i)"))) == "-i - 2");
  try {
    hyper_dp(2, parse_hyper("i"));
    FAIL("expected UnsupportedValuation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedValuation);
  }
  CHECK_THROWS_AS(hyper_dp(4, parse_hyper("2^i")), Error);
}

TEST_CASE("2^i lies in every 2^k Z on a cofinite set") {
  HyperEnv env{{"x", parse_hyper("2^i")}};
  auto dp = hyper_dp(2, env.at("x"));
  for (Index i = 0; i < 100; ++i) CHECK(eval(dp, i) == Integer(i));
  for (unsigned k = 0; k <= 64; ++k) {
    auto s = truth_set(formula::divides(formula::pow(formula::num(2), k), formula::var("x")), env);
    CHECK(s == PeriodicSet::from(k));
  }
}

TEST_CASE("sequence grammar round trip") {
  for (const char* src : {"i", "2^i", "i^2 + 1", "-(i - 3) * 5", "nthprime(i) - i", "3 * (i + 1)^2"}) {
    auto e = parse_seq(src);
    auto again = parse_seq(to_string(e));
    for (Index i = 0; i < 20; ++i) CHECK(eval(e, i) == eval(again, i));
  }
  CHECK(eval(parse_seq("nthprime(i)"), 3) == 7);
  CHECK_THROWS_AS(parse_seq("i^i"), SyntaxError);
  CHECK_THROWS_AS(parse_seq("x + 1"), SyntaxError);
}

TEST_CASE("exponential polynomial signs are eventually constant") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    SeqExpr e = seq_sub(random_seq(rng), seq_mul(random_seq(rng), random_seq(rng)));
    auto f = to_exp_poly(e);
    REQUIRE(f);
    if (f->is_zero()) continue;
    auto [s, n] = f->eventual_sign();
    for (Index i = n; i < n + 60; ++i) {
      Integer v = eval(e, i);
      REQUIRE((v > 0 ? 1 : -1) == s);
      REQUIRE(v != 0);
    }
  }
}

TEST_CASE("module action") {
  CyclicModuleSeq six(seq_const(6));
  auto na = module_action(seq_index(), seq_const(1));
  for (Index i = 0; i < 30; ++i) CHECK(six.component(na, i) == Integer(i % 6));
  CHECK(six.component(module_action(seq_const(0), seq_index()), 9) == 0);
  CHECK(six.component(module_action(seq_const(2), seq_const(3)), 4) == 0);

  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    CyclicModuleSeq mod(seq_add(seq_mul(seq_const(1 + rng() % 4), seq_index()), seq_const(1 + rng() % 5)));
    SeqExpr n1 = random_seq(rng), n2 = random_seq(rng), a1 = random_seq(rng), a2 = random_seq(rng);
    auto lhs1 = module_action(seq_add(n1, n2), a1);
    auto rhs1 = mod.add(module_action(n1, a1), module_action(n2, a1));
    auto lhs2 = module_action(n1, mod.add(a1, a2));
    auto rhs2 = mod.add(module_action(n1, a1), module_action(n1, a2));
    for (Index i = 0; i <= 1000; ++i) {
      REQUIRE(mod.component(lhs1, i) == mod.component(rhs1, i));
      REQUIRE(mod.component(lhs2, i) == mod.component(rhs2, i));
    }
  }
}

TEST_CASE("quotient bound check") {
  auto r = quotient_bound_check(CyclicModuleSeq(seq_const(12)), {seq_const(1)}, 4, 50);
  CHECK(r.ok);
  CHECK(r.max_observed == 4);
  CHECK(r.bound == 4);
  auto one = quotient_bound_check(CyclicModuleSeq(seq_const(12)), {seq_const(1)}, 1, 10);
  CHECK(one.max_observed == 1);
  auto lin = quotient_bound_check(CyclicModuleSeq(parse_seq("2*i + 2")), {seq_const(1)}, 2, 100);
  CHECK(lin.ok);
  for (auto s : lin.sizes) CHECK((s == 1 || s == 2));
  try {
    quotient_bound_check(CyclicModuleSeq(seq_const(12)), {seq_const(2)}, 2, 5);
    FAIL("expected NotGenerating");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotGenerating);
  }
  // the brute-force size matches gcd(k, m)
  for (std::uint64_t m = 1; m < 60; ++m)
    for (std::uint64_t k = 1; k < 8; ++k) CHECK(ultra::detail::cyclic_quotient_size(m, k) == std::gcd(m, k));
}
