#include <catch_amalgamated.hpp>

#include <random>

#include "hyperarith/valuation.hpp"

using namespace hyperarith;

namespace {

Rational random_rational(std::mt19937_64& rng, long long max) {
  std::uniform_int_distribution<long long> d(1, max);
  long long n = d(rng) * (rng() % 2 ? 1 : -1);
  return Rational(Integer(n), Integer(d(rng)));
}

}  // namespace

TEST_CASE("rational canonical form") {
  Rational r(Integer(-4), Integer(-6));
  CHECK(r.num() == 2);
  CHECK(r.den() == 3);
  CHECK(Rational(Integer(3), Integer(-9)).str() == "-1/3");
  CHECK(Rational(Integer(0), Integer(-5)).den() == 1);
  CHECK(Rational::parse("10/4") == Rational(Integer(5), Integer(2)));
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  CHECK(Rational(Integer(-7), Integer(3)).height() == 7);
  CHECK(Rational(Integer(2), Integer(9)).height() == 9);
  CHECK(Rational(0).height() == 1);
}

TEST_CASE("gcd_ideal") {
  CHECK(gcd_ideal(12, 10) == 2);
  CHECK(gcd_ideal(0, 7) == 7);
  CHECK(gcd_ideal(-6, 15) == 3);
  try {
    gcd_ideal(0, 0);
    FAIL("expected BothZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BothZero);
  }
}

TEST_CASE("gcd_ideal agrees with a common-divisor scan") {
  for (int n = -30; n <= 30; ++n)
    for (int m = -30; m <= 30; ++m) {
      if (n == 0 && m == 0) continue;
      int best = 0;
      int top = std::max(std::abs(n), std::abs(m));
      for (int d = 1; d <= top; ++d)
        if (n % d == 0 && m % d == 0) best = d;
      CHECK(gcd_ideal(n, m) == best);
    }
}

TEST_CASE("vp") {
  CHECK(vp(2, 12) == PrimePower{2, 2});
  CHECK(vp(2, 12).value() == 4);
  CHECK(vp(3, Rational(Integer(9), Integer(2))).value() == 9);
  auto v = vp(5, Rational(Integer(7), Integer(50)));
  CHECK(v.exp == -2);
  CHECK(v.value() == Rational(Integer(1), Integer(25)));
  CHECK_THROWS_MATCHES(vp(4, 8), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::NotPrime;
                       }));
  CHECK_THROWS_MATCHES(vp(3, 0), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::ZeroArgument;
                       }));
}

TEST_CASE("sign") {
  CHECK(sign(Rational(Integer(7), Integer(3))) == 1);
  CHECK(sign(-2) == -1);
  CHECK(sign(Rational(Integer(-4), Integer(-6))) == 1);
  CHECK_THROWS_AS(sign(0), Error);
}

TEST_CASE("factor_embed and factor_reconstruct") {
  auto f = factor_embed(-12);
  CHECK(f.sign == -1);
  CHECK(f.exps == std::map<Integer, Exponent>{{2, 2}, {3, 1}});
  CHECK(factor_embed(1) == SignedFactorization{});
  auto g = factor_embed(Rational(Integer(45), Integer(28)));
  CHECK(g.sign == 1);
  CHECK(g.exps == std::map<Integer, Exponent>{{2, -2}, {3, 2}, {5, 1}, {7, -1}});
  CHECK(factor_reconstruct(SignedFactorization{}) == 1);
  CHECK(factor_reconstruct({-1, {{2, 2}, {3, 1}}}) == -12);
  CHECK(factor_reconstruct({1, {{2, -2}, {3, 2}, {5, 1}, {7, -1}}}) == Rational(Integer(45), Integer(28)));
  CHECK_THROWS_AS(factor_reconstruct({1, {{4, 1}}}), Error);
  CHECK_THROWS_AS(factor_reconstruct({1, {{3, 0}}}), Error);
  CHECK_THROWS_AS(factor_embed(0), Error);
}

TEST_CASE("is_nat direct and four-squares") {
  CHECK(is_nat(7));
  auto w = four_squares_witness(7, 10);
  REQUIRE(w);
  CHECK((*w)[0] * (*w)[0] + (*w)[1] * (*w)[1] + (*w)[2] * (*w)[2] + (*w)[3] * (*w)[3] == 7);
  CHECK(!is_nat(-1));
  CHECK(!is_nat(Rational(Integer(3), Integer(2))));
  for (int n = -100; n <= 100; ++n) CHECK(is_nat(n) == is_nat_four_squares(n, 100));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational x = random_rational(rng, 50);
    CHECK(is_nat(x) == is_nat_four_squares(x, 100));
  }
}

TEST_CASE("primality") {
  CHECK(is_prime(7));
  CHECK(!is_prime(1));
  CHECK(!is_prime(9));
  CHECK(!is_prime(-7));
  CHECK(!is_prime(0));
  CHECK(is_prime(Integer("1000000007")));
  CHECK(!is_prime(Integer("1000000007") * 3));
  CHECK_THROWS_AS(is_prime(Integer("1000000000000000000000")), Error);
  CHECK(nth_prime(0) == 2);
  CHECK(nth_prime(9) == 29);
}

TEST_CASE("is_prime_power") {
  CHECK(is_prime_power(2, 8));
  CHECK(is_prime_power(2, 1));
  CHECK(!is_prime_power(2, 12));
  CHECK_THROWS_AS(is_prime_power(6, 36), Error);
}

TEST_CASE("prime_factor_set") {
  CHECK(prime_factor_set(12).primes() == std::vector<Integer>{2, 3});
  CHECK(prime_factor_set(1).empty());
  CHECK(prime_factor_set(-1).empty());
  CHECK(prime_factor_set(0).is_all());
  CHECK(prime_factor_set(0).str() == "ALL");
  CHECK(prime_factor_set(-30).str() == "{2,3,5}");
}

TEST_CASE("valuation properties on random samples") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    Rational a = random_rational(rng, 100000);
    Rational b = random_rational(rng, 100000);
    for (int p : {2, 3, 5, 7, 11, 13, 97}) {
      CHECK(vp(p, a * b).exp == vp(p, a).exp + vp(p, b).exp);
      if (!(a + b).is_zero()) CHECK(vp(p, a + b).exp >= std::min(vp(p, a).exp, vp(p, b).exp));
    }
  }
}

TEST_CASE("factorization round trip and separation") {
  std::mt19937_64 rng(7);
  std::vector<std::pair<Rational, SignedFactorization>> seen;
  for (int i = 0; i < 1000; ++i) {
    Rational x = random_rational(rng, 1'000'000'000);
    auto f = factor_embed(x);
    CHECK(factor_reconstruct(f) == x);
    for (const auto& [p, e] : f.exps) CHECK(e != 0);
    seen.emplace_back(x, f);
  }
  for (std::size_t i = 0; i + 1 < seen.size(); ++i) {
    bool same_fact = seen[i].second == seen[i + 1].second;
    CHECK(same_fact == (seen[i].first == seen[i + 1].first));
  }
}

TEST_CASE("pr of gcd is the intersection") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long long> d(-100000, 100000);
  for (int i = 0; i < 1000; ++i) {
    Integer n = d(rng);
    Integer m = d(rng);
    if (n == 0 && m == 0) continue;
    auto lhs = prime_factor_set(n).intersect(prime_factor_set(m));
    auto rhs = prime_factor_set(gcd_ideal(n, m));
    CHECK(lhs.str() == rhs.str());
  }
}

TEST_CASE("integers are the rationals with nonnegative valuations") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Rational x = random_rational(rng, 5000);
    bool all_nonneg = true;
    for (const auto& [p, e] : factor_embed(x).exps)
      if (e < 0) all_nonneg = false;
    CHECK(all_nonneg == x.is_integer());
  }
}
