#include <catch_amalgamated.hpp>

#include <random>

#include "hyperarith/ideals/dvr.hpp"
#include "hyperarith/ideals/filters.hpp"

using namespace hyperarith;
using namespace hyperarith::ideals;

namespace {

PrimeSet ps(std::vector<int> v) {
  std::vector<Integer> out(v.begin(), v.end());
  return PrimeSet(out);
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::BadParameter;
}

std::vector<std::size_t> range(std::size_t a, std::size_t b) {
  std::vector<std::size_t> v;
  for (std::size_t s = a; s <= b; ++s) v.push_back(s);
  return v;
}

}  // namespace

TEST_CASE("filter of an ideal") {
  CHECK(filter_of_ideal(FGIdeal(6)).core() == ps({2, 3}));
  CHECK(filter_of_ideal(FGIdeal(4)).core() == ps({2}));
  CHECK(filter_of_ideal(FGIdeal(-12)).core() == ps({2, 3}));
  CHECK(code_of([] { filter_of_ideal(FGIdeal(1)); }) == ErrorCode::UnitIdeal);
  // the zero ideal gives the filter {ALL}
  auto z = filter_of_ideal(FGIdeal(0));
  CHECK(z.core().is_all());
  CHECK(ideal_of_filter(z) == FGIdeal(0));
}

TEST_CASE("ideal of a filter") {
  CHECK(ideal_of_filter(FilterDesc({ps({2, 3})})) == FGIdeal(6));
  CHECK(ideal_of_filter(FilterDesc({ps({2})})) == FGIdeal(2));
  CHECK(ideal_of_filter(filter_of_ideal(FGIdeal(4))) == FGIdeal(2));
  CHECK(ideal_of_filter(FilterDesc({ps({2, 3, 5}), ps({3, 5, 7})})) == FGIdeal(15));
  CHECK(code_of([] { FilterDesc({}); }) == ErrorCode::EmptyBase);
  CHECK(code_of([] { FilterDesc({ps({})}); }) == ErrorCode::EmptyBase);
  CHECK(code_of([] { FilterDesc({ps({2}), ps({3})}); }) == ErrorCode::EmptyBase);
}

TEST_CASE("maximal principal filters") {
  CHECK(is_maximal_principal_filter(FilterDesc::principal(7)));
  CHECK(is_maximal_principal_filter(FilterDesc::principal(49)));
  CHECK(!is_maximal_principal_filter(FilterDesc::principal(6)));
  // <{2,3}> is properly extended by <{2}>
  CHECK(FilterDesc::principal(6).is_subset_of(FilterDesc::principal(2)));
  CHECK(!FilterDesc::principal(2).is_subset_of(FilterDesc::principal(6)));
  CHECK(code_of([] { is_maximal_principal_filter(FilterDesc({ps({7})})); }) == ErrorCode::NotPrincipal);
}

TEST_CASE("galois checks examples") {
  auto r = galois_checks(FGIdeal(12), filter_of_ideal(FGIdeal(6)));
  CHECK(r.pass());
  CHECK(r.clauses.size() == 5);
  CHECK(galois_checks(FGIdeal(10), FilterDesc({ps({2, 5})})).pass());
  auto r8 = galois_checks(FGIdeal(8), filter_of_ideal(FGIdeal(8)));
  CHECK(r8.pass());
  REQUIRE(r8.strictness_witness);
  CHECK(*r8.strictness_witness == 2);
  auto r4 = galois_checks(FGIdeal(4), FilterDesc({ps({2})}));
  REQUIRE(r4.strictness_witness);
  CHECK(*r4.strictness_witness == 2);
  // squarefree ideals are fixed, so no witness
  CHECK(!galois_checks(FGIdeal(30), FilterDesc({ps({3})})).strictness_witness);
}

TEST_CASE("filter axioms on random instances") {
  std::mt19937_64 rng(11);
  const std::vector<int> primes = {2, 3, 5, 7, 11, 13, 17, 19};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> core;
    for (int p : primes)
      if (rng() % 3 == 0) core.push_back(p);
    if (core.empty()) core.push_back(primes[rng() % primes.size()]);
    std::vector<PrimeSet> base;
    std::size_t nb = 1 + rng() % 3;
    for (std::size_t j = 0; j < nb; ++j) {
      auto s = core;
      for (int p : primes)
        if (rng() % 4 == 0) s.push_back(p);
      base.push_back(ps(s));
    }
    FilterDesc f(base);
    CHECK(!f.contains(ps({})));
    // every base set is a member, meets of members are members, supersets are members
    for (const auto& b : base) {
      CHECK(f.contains(b));
      for (const auto& c : base) CHECK(f.contains(b.intersect(c)));
      CHECK(f.contains(b.unite(ps({23}))));
    }
    CHECK(f.contains(PrimeSet::all()));
  }
}

TEST_CASE("pr of gcd is the meet") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    Integer n = static_cast<long long>(rng() % 100000) + 1;
    Integer m = static_cast<long long>(rng() % 100000) + 1;
    CHECK(prime_factor_set(n).intersect(prime_factor_set(m)) == prime_factor_set(gcd_ideal(n, m)));
  }
}

TEST_CASE("galois checks on random instances") {
  std::mt19937_64 rng(23);
  const std::vector<int> primes = {2, 3, 5, 7, 11};
  for (int trial = 0; trial < 200; ++trial) {
    Integer g = 1;
    while (g < 2) {
      g = 1;
      for (int p : primes)
        for (int e = static_cast<int>(rng() % 3); e > 0; --e) g *= p;
    }
    std::vector<int> q;
    for (int p : primes)
      if (rng() % 2 == 0) q.push_back(p);
    if (q.empty()) q.push_back(2);
    auto r = galois_checks(FGIdeal(g), FilterDesc({ps(q)}), 10000);
    INFO("g=" << g << " trial=" << trial);
    CHECK(r.pass());
  }
}

TEST_CASE("convex hull and w.r.e.p. closure") {
  auto nat20 = OrderedSemigroupModel::nat(20);
  auto t = SubsemigroupTrunc::generated(nat20, {2, 5});
  CHECK(t.elements() == std::vector<std::size_t>{2, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20});
  // the hull must also take in 3, which lies between 2 and 4
  CHECK(convex_hull(t).elements() == range(2, 20));
  CHECK(wrep_closure(t).elements() == range(2, 20));

  auto one = SubsemigroupTrunc::generated(nat20, {1});
  CHECK(wrep_closure(one).elements() == range(1, 20));

  auto w = wrep_closure(SubsemigroupTrunc::generated(nat20, {7}));
  CHECK(w.elements() == range(7, 20));
  CHECK(wrep_closure(w) == w);
  CHECK(convex_hull(w) == w);

  // {0} never leaves the window, so its hull is itself
  auto z = SubsemigroupTrunc::generated(nat20, {0});
  CHECK(convex_hull(z) == z);

  CHECK(code_of([&] { SubsemigroupTrunc::generated(nat20, {21}); }) == ErrorCode::WindowOverflow);
  CHECK(code_of([&] { nat20.index_of("30"); }) == ErrorCode::WindowOverflow);
  // {2} is not closed in a window that holds 4
  CHECK(code_of([] { SubsemigroupTrunc(OrderedSemigroupModel::nat(4), {false, false, true, false, false}); }) ==
        ErrorCode::BadParameter);
}

TEST_CASE("closures are idempotent on random generators") {
  std::mt19937_64 rng(8);
  for (auto m : {OrderedSemigroupModel::nat(24), OrderedSemigroupModel::ppower(3, 16), OrderedSemigroupModel::nonnegrat(18, 6)}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::size_t> g;
      for (int j = 0; j < 3; ++j) g.push_back(rng() % m.size());
      auto t = SubsemigroupTrunc::generated(m, g);
      auto h = convex_hull(t);
      auto w = wrep_closure(t);
      CHECK(convex_hull(h) == h);
      CHECK(wrep_closure(w) == w);
      CHECK(is_convex(h));
      CHECK(is_wrep(w));
      for (auto e : t.elements()) CHECK(h.contains(e));
      for (auto e : h.elements()) CHECK(w.contains(e));
    }
  }
}

TEST_CASE("model labels and parsing") {
  auto q = OrderedSemigroupModel::nonnegrat(12, 6);
  CHECK(q.label(3) == "1/2");
  CHECK(q.index_of("2/3") == 4);
  CHECK(code_of([&] { q.index_of("1/5"); }) == ErrorCode::BadParameter);
  auto p = OrderedSemigroupModel::ppower(2, 12);
  CHECK(p.label(5) == "32");
  CHECK(p.index_of("1") == 0);
  CHECK(p.index_of("64") == 6);
  CHECK(code_of([&] { p.index_of("12"); }) == ErrorCode::BadParameter);
  CHECK(code_of([&] { p.index_of("8192"); }) == ErrorCode::WindowOverflow);
}

TEST_CASE("radical and prime examples") {
  auto nat = OrderedSemigroupModel::nat(20);
  auto pos = SubsemigroupTrunc::generated(nat, range(1, 20));
  CHECK(is_radical(pos));
  CHECK(is_prime_subsg(pos));

  auto t4 = SubsemigroupTrunc::generated(nat, range(4, 20));
  auto [rad, rw] = radical_check(t4);
  auto [pri, pw] = prime_check(t4);
  CHECK(!rad);
  CHECK(!pri);
  REQUIRE(rw);
  CHECK(!t4.contains((*rw)[1]));
  REQUIRE(pw);
  // smallest b first, then the largest a <= b
  CHECK(*pw == std::pair<std::size_t, std::size_t>{2, 2});

  // the whole carrier is trivially radical and prime
  CHECK(is_radical(SubsemigroupTrunc::generated(nat, range(0, 20))));
  CHECK(is_prime_subsg(SubsemigroupTrunc::generated(nat, range(0, 20))));

  // {2,4,6,...} is not w.r.e.p.; 1+1 lands in it, and 1 is a square root of 2
  auto evens = SubsemigroupTrunc::generated(nat, {2});
  CHECK(!is_wrep(evens));
  CHECK(!is_prime_subsg(evens));
  CHECK(!is_radical(evens));
}

TEST_CASE("radical iff prime exhaustively") {
  for (auto m : {OrderedSemigroupModel::nat(12), OrderedSemigroupModel::ppower(2, 12), OrderedSemigroupModel::nonnegrat(10, 4)}) {
    auto r = radical_prime_exhaustive(m);
    CHECK(r.pass());
    CHECK(r.subsets == (std::size_t{1} << m.size()) - 1);
    CHECK(r.wrep_count == m.size());
    CHECK(r.radical_count == 2);  // [0, N] and [1, N]
  }
}

TEST_CASE("valuation ideal correspondence") {
  auto s3 = S_of_I({5, 3}, 20);
  CHECK(s3.elements() == range(3, 20));
  CHECK(I_of_T(s3, 5) == ValuationIdeal{5, 3});
  CHECK(!(S_of_I({5, 3}, 20) == S_of_I({5, 4}, 20)));

  auto t = SubsemigroupTrunc::generated(OrderedSemigroupModel::nat(20), {2, 4});
  CHECK(S_of_I(I_of_T(t, 3), 20) == wrep_closure(t));
  CHECK(S_of_I(I_of_T(t, 3), 20).elements() == range(2, 20));

  auto empty = SubsemigroupTrunc(OrderedSemigroupModel::nat(5), std::vector<bool>(6, false));
  CHECK(code_of([&] { I_of_T(empty, 2); }) == ErrorCode::EmptySubsemigroup);
  CHECK(code_of([] { S_of_I({4, 1}, 10); }) == ErrorCode::NotPrime);

  for (int p : {2, 3, 7}) {
    auto r = correspondence_check(p, 50, 64);
    INFO(r.failure.value_or(""));
    CHECK(r.pass());
    CHECK(r.k_checked == 50);
  }
}
