#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "hyperarith/elliptic/dataset.hpp"

using namespace hyperarith;
using namespace hyperarith::elliptic;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

std::vector<CurveRecord> dataset() { return load_dataset_file(HYPERARITH_DEFAULT_DATASET); }

// Random points: small combinations of generators and torsion.
CurvePoint random_point(const MWData& m, std::mt19937_64& rng) {
  CurvePoint p = m.torsion[rng() % m.torsion.size()];
  for (const auto& g : m.generators) p = add(m.curve, p, smul(m.curve, static_cast<long long>(rng() % 5) - 2, g));
  return p;
}

}  // namespace

TEST_CASE("curve construction") {
  Curve c(-1, 0);
  CHECK(c.discriminant_core() == -4);
  CHECK(code_of([] { Curve(0, 0); }) == ErrorCode::Singular);
  CHECK_NOTHROW(curve_new(0, 1));
}

TEST_CASE("chord-tangent addition") {
  Curve c(0, 1);
  CurvePoint p(2, 3);
  CHECK(add(c, p, p) == CurvePoint(0, 1));
  Curve d(-1, 0);
  CHECK(add(d, CurvePoint(0, 0), CurvePoint(0, 0)).is_infinity());
  CHECK(add(c, p, CurvePoint::infinity()) == p);
  CHECK(add(c, p, neg(c, p)).is_infinity());
  CHECK(code_of([&] { add(c, p, CurvePoint(1, 1)); }) == ErrorCode::PointNotOnCurve);
  CHECK(CurvePoint::infinity().triple() == std::array<Rational, 3>{0, 1, 0});
}

TEST_CASE("scalar multiples") {
  Curve c(0, 1);
  CurvePoint p(2, 3);
  CHECK(smul(c, 6, p).is_infinity());
  CHECK(point_order(c, p, 12) == 6);
  CHECK(smul(c, 1, p) == p);
  CHECK(smul(c, 0, p).is_infinity());
  CHECK(smul(c, -4, p) == neg(c, smul(c, 4, p)));
  Curve d(-1, 0);
  CHECK(smul(d, 2, CurvePoint(0, 0)).is_infinity());
  // repeated addition agrees with double-and-add
  Curve e(0, -2);
  CurvePoint g(3, 5);
  CurvePoint acc;
  for (int k = 1; k <= 9; ++k) {
    acc = add(e, acc, g);
    CHECK(smul(e, k, g) == acc);
  }
}

TEST_CASE("torsion via Lutz-Nagell") {
  auto t1 = torsion_points(Curve(-1, 0));
  CHECK(t1 == std::vector<CurvePoint>{CurvePoint(), CurvePoint(-1, 0), CurvePoint(0, 0), CurvePoint(1, 0)});
  auto t2 = torsion_points(Curve(0, 1));
  CHECK(t2.size() == 6);
  std::set<CurvePoint> gen;
  for (int k = 0; k < 6; ++k) gen.insert(smul(Curve(0, 1), k, CurvePoint(2, 3)));
  CHECK(std::set<CurvePoint>(t2.begin(), t2.end()) == gen);
  CHECK(torsion_points(Curve(0, -2)) == std::vector<CurvePoint>{CurvePoint()});
  // non-integral model: y^2 = x^3 + 1/4 has (0, +-1/2) of order 3
  auto t3 = torsion_points(Curve(0, Rational(Integer(1), Integer(4))));
  CHECK(t3.size() == 3);
  CHECK(std::find(t3.begin(), t3.end(), CurvePoint(0, Rational(Integer(1), Integer(2)))) != t3.end());
}

TEST_CASE("naive point search") {
  auto pts = naive_point_search(Curve(0, -2), 10);
  CHECK(std::find(pts.begin(), pts.end(), CurvePoint(3, 5)) != pts.end());
  CHECK(std::find(pts.begin(), pts.end(), CurvePoint(3, -5)) != pts.end());
  auto two = naive_point_search(Curve(-1, 0), 5);
  CHECK(two == std::vector<CurvePoint>{CurvePoint(-1, 0), CurvePoint(0, 0), CurvePoint(1, 0)});
  CHECK(code_of([] { naive_point_search(Curve(-1, 0), 0); }) == ErrorCode::BadParameter);
}

TEST_CASE("weak Mordell-Weil quotient examples") {
  auto q = weak_mw_quotient(make_mw_data(Curve(-1, 0), {}), 2);
  CHECK(q.cardinality == 4);
  CHECK(q.lower == 1);
  CHECK(q.upper == 5);
  auto r = weak_mw_quotient(make_mw_data(Curve(0, -2), {CurvePoint(3, 5)}), 2);
  CHECK(r.cardinality == 2);
  CHECK(r.upper == 6);
  auto s = weak_mw_quotient(make_mw_data(Curve(0, -2), {}), 3);
  CHECK(s.cardinality == 1);
  CHECK(s.upper == 10);
  CHECK(code_of([] { weak_mw_quotient(make_mw_data(Curve(0, -2), {}), 1); }) == ErrorCode::BadParameter);
}

TEST_CASE("MWData validation") {
  CHECK(code_of([] { make_mw_data(Curve(0, 1), {CurvePoint(2, 3)}); }) == ErrorCode::InvalidMWData);
  CHECK(code_of([] { make_mw_data(Curve(0, -2), {CurvePoint(3, 4)}); }) == ErrorCode::InvalidMWData);
  Curve c(0, -2);
  CurvePoint g(3, 5);
  CHECK(code_of([&] { make_mw_data(c, {g, smul(c, 2, g)}); }) == ErrorCode::InvalidMWData);
  CHECK(code_of([&] { make_mw_data(c, {g, neg(c, g)}); }) == ErrorCode::InvalidMWData);
}

TEST_CASE("sandwich violation is reported") {
  // Full 2-torsion and rank 1: |E/2E| = 2 * 4 = 8 > 2 + 4.
  Curve e(-25, 0);
  auto data = make_mw_data(e, {CurvePoint(-4, 6)});
  CHECK(code_of([&] { weak_mw_quotient(data, 2); }) == ErrorCode::SandwichViolation);
  CHECK(classical_upper_bound(data, 2) == 8);
}

TEST_CASE("dataset loads and satisfies the sandwich") {
  auto recs = dataset();
  REQUIRE(recs.size() == 10);
  for (const auto& r : recs) {
    std::size_t tsize = r.data.torsion.size();
    CHECK(((tsize >= 1 && tsize <= 10) || tsize == 12));
    for (int n : {2, 3, 4}) {
      auto q = weak_mw_quotient(r.data, n);
      std::uint64_t expect = upow(n, r.data.generators.size()) * torsion_quotient_reps(r.data.curve, r.data.torsion, n).size();
      CHECK(q.cardinality == expect);
      CHECK(q.lower <= q.cardinality);
      CHECK(q.cardinality <= q.upper);
      CHECK(q.cardinality <= classical_upper_bound(r.data, n));
    }
  }
  auto frag = rank_bound_fragment([&] {
    std::vector<MWData> v;
    for (const auto& r : recs) v.push_back(r.data);
    return v;
  }());
  CHECK(frag.max_rank == 3);
  CHECK(frag.ranks_bound_weak2);
  CHECK(frag.weak2_bounds_ranks);
}

TEST_CASE("dataset loader rejects bad records with their index") {
  std::istringstream in(
      "{\"A\": \"-1\", \"B\": \"0\", \"rank\": 0, \"generators\": [], \"torsion_order\": 4}\n"
      "\n"
      "{\"A\": \"0\", \"B\": \"-2\", \"rank\": 1, \"generators\": [[\"3\", \"4\"]], \"torsion_order\": 1}\n");
  try {
    load_dataset(in);
    FAIL("expected DatasetError");
  } catch (const DatasetError& e) {
    CHECK(e.record() == 1);
  }
  std::istringstream bad_torsion("{\"A\": \"0\", \"B\": \"1\", \"rank\": 0, \"generators\": [], \"torsion_order\": 5}\n");
  CHECK_THROWS_AS(load_dataset(bad_torsion), DatasetError);
  std::istringstream junk("not json\n");
  CHECK_THROWS_AS(load_dataset(junk), DatasetError);
}

TEST_CASE("group axioms on dataset curves") {
  std::mt19937_64 rng(31337);
  for (const auto& r : dataset()) {
    const Curve& c = r.data.curve;
    for (int i = 0; i < 40; ++i) {
      CurvePoint p = random_point(r.data, rng);
      CurvePoint q = random_point(r.data, rng);
      CurvePoint s = random_point(r.data, rng);
      CHECK(add(c, add(c, p, q), s) == add(c, p, add(c, q, s)));
      CHECK(add(c, p, q) == add(c, q, p));
      CHECK(add(c, p, CurvePoint()) == p);
      CHECK(add(c, p, neg(c, p)).is_infinity());
      CHECK(on_curve(c, add(c, p, q)));
      CHECK(on_curve(c, smul(c, 3, p)));
    }
  }
}
