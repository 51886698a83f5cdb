#pragma once

// The acceptance battery: one check per numbered criterion, deterministic
// given the seed. Shared by `hyperarith suite` and the acceptance binary.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperarith/elliptic/dataset.hpp"
#include "hyperarith/formula/builtins.hpp"
#include "hyperarith/formula/eval.hpp"
#include "hyperarith/formula/parser.hpp"
#include "hyperarith/ideals/dvr.hpp"
#include "hyperarith/ideals/filters.hpp"
#include "hyperarith/ultra/module.hpp"
#include "hyperarith/ultra/truth_set.hpp"
#include "hyperarith/valuation.hpp"

namespace hyperarith::suite {

struct CheckResult {
  int id = 0;
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<std::string> counterexample;  // the first failure
  double seconds = 0;
  double limit_seconds = 0;

  bool within_time() const { return seconds <= limit_seconds; }
  bool pass() const { return failures == 0 && cases > 0 && within_time(); }

  void expect(bool ok, const std::function<std::string()>& what) {
    ++cases;
    if (ok) return;
    ++failures;
    if (!counterexample) counterexample = what();
  }
};

struct Options {
  std::string dataset = HYPERARITH_DEFAULT_DATASET;
  std::uint64_t seed = 20240601;
  std::uint64_t galois_bound = 10'000;
};

namespace detail {

using Rng = std::mt19937_64;

// Portable draws: std distributions differ between standard libraries.
inline long long draw(Rng& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational random_rational(Rng& rng, long long height) {
  long long n = draw(rng, 1, height) * (rng() % 2 ? 1 : -1);
  return {Integer(n), Integer(draw(rng, 1, height))};
}

inline ultra::SeqExpr random_seq(Rng& rng) {
  using namespace ultra;
  switch (rng() % 6) {
    case 0: return seq_const(draw(rng, -5, 5));
    case 1: return seq_index();
    case 2: return seq_add(seq_mul(seq_const(draw(rng, -2, 2)), seq_pow(seq_index(), 2)), seq_const(draw(rng, -3, 3)));
    case 3: return seq_exp(2 + rng() % 3);
    case 4: return seq_sub(seq_exp(2), seq_pow(seq_index(), 1 + rng() % 4));
    default: return seq_sub(seq_index(), seq_const(draw(rng, 0, 8)));
  }
}

inline ultra::PeriodicSet random_set(Rng& rng) {
  ultra::Index m = 1 + rng() % 12;
  std::vector<bool> r(m);
  for (ultra::Index k = 0; k < m; ++k) r[k] = rng() % 2;
  if (rng() % 5 == 0) std::fill(r.begin(), r.end(), rng() % 2 == 0);
  std::set<ultra::Index> plus;
  std::set<ultra::Index> minus;
  for (int j = 0; j < 3; ++j) plus.insert(rng() % 30);
  for (int j = 0; j < 3; ++j) minus.insert(rng() % 30);
  return {m, r, plus, minus};
}

inline elliptic::CurvePoint random_point(const elliptic::MWData& m, Rng& rng) {
  using namespace elliptic;
  CurvePoint p = m.torsion[rng() % m.torsion.size()];
  for (const auto& g : m.generators) p = add(m.curve, p, smul(m.curve, draw(rng, -2, 2), g));
  return p;
}

template <class F>
CheckResult timed(int id, std::string name, double limit, F&& body) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  r.limit_seconds = limit;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    ++r.failures;
    if (!r.counterexample) r.counterexample = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

inline CheckResult factorization_round_trip(const Options& o) {
  return detail::timed(1, "factorization round trip and separation", 5, [&](CheckResult& r) {
    detail::Rng rng(o.seed + 1);
    std::vector<std::pair<Rational, SignedFactorization>> seen;
    for (int i = 0; i < 1000; ++i) {
      Rational x = detail::random_rational(rng, 1'000'000'000);
      auto f = factor_embed(x);
      r.expect(factor_reconstruct(f) == x, [&] { return "reconstruct(embed(" + x.str() + "))"; });
      seen.emplace_back(x, f);
    }
    // separation: consecutive draws, sign flips, and a rebuilt copy
    for (std::size_t i = 0; i + 1 < seen.size(); ++i) {
      const auto& [x, fx] = seen[i];
      const auto& [y, fy] = seen[i + 1];
      r.expect((fx == fy) == (x == y), [&] { return x.str() + " vs " + y.str(); });
      r.expect(!(factor_embed(-x) == fx), [&] { return "sign of " + x.str(); });
      Rational copy(x.num() * 7, x.den() * 7);
      r.expect(factor_embed(copy) == fx, [&] { return "rebuilt " + x.str(); });
    }
  });
}

inline CheckResult valuation_axioms(const Options& o) {
  return detail::timed(2, "valuation multiplicativity and ultrametric inequality", 5, [&](CheckResult& r) {
    detail::Rng rng(o.seed + 2);
    for (int i = 0; i < 1000; ++i) {
      Rational a = detail::random_rational(rng, 1'000'000);
      Rational b = detail::random_rational(rng, 1'000'000);
      if (i % 2 == 0) b = b * Rational(Integer(720));  // shared small factors exercise the inequality
      for (int p : {2, 3, 5, 7, 11}) {
        r.expect(vp(p, a * b).exp == vp(p, a).exp + vp(p, b).exp,
                 [&] { return "d_" + std::to_string(p) + "(" + a.str() + " * " + b.str() + ")"; });
        if (!(a + b).is_zero())
          r.expect(vp(p, a + b).exp >= std::min(vp(p, a).exp, vp(p, b).exp),
                   [&] { return "d_" + std::to_string(p) + "(" + a.str() + " + " + b.str() + ")"; });
      }
    }
  });
}

inline CheckResult elliptic_group_axioms(const Options& o) {
  return detail::timed(3, "elliptic group axioms and agreement with the addE formula", 60, [&](CheckResult& r) {
    using namespace elliptic;
    using formula::TriBool;
    auto recs = load_dataset_file(o.dataset);
    r.expect(recs.size() >= 10, [&] { return "dataset has only " + std::to_string(recs.size()) + " curves"; });
    auto b = formula::builtin_def("addE");
    detail::Rng rng(o.seed + 3);
    for (std::size_t ci = 0; ci < recs.size() && ci < 10; ++ci) {
      const MWData& m = recs[ci].data;
      const Curve& c = m.curve;
      for (int t = 0; t < 200; ++t) {
        CurvePoint p = detail::random_point(m, rng);
        CurvePoint q = detail::random_point(m, rng);
        CurvePoint s = detail::random_point(m, rng);
        auto where = [&] { return c.str() + " at " + p.str() + ", " + q.str() + ", " + s.str(); };
        r.expect(add(c, add(c, p, q), s) == add(c, p, add(c, q, s)), where);
        r.expect(add(c, p, q) == add(c, q, p), where);
        r.expect(add(c, p, neg(c, p)).is_infinity(), where);
        CurvePoint sum = add(c, p, q);
        auto args = [&](const CurvePoint& z) {
          std::vector<Rational> v{c.a(), c.b()};
          for (const CurvePoint* pt : std::array<const CurvePoint*, 3>{&p, &q, &z})
            for (const auto& coord : pt->triple()) v.push_back(coord);
          return v;
        };
        r.expect(formula::eval(b.formula, formula::bind_args(b, args(sum)), 1) == TriBool::True, where);
        CurvePoint other = add(c, sum, s);
        r.expect(formula::eval(b.formula, formula::bind_args(b, args(other)), 1) == formula::tri(other == sum), where);
      }
    }
  });
}

inline CheckResult weak_mw_sandwich(const Options& o) {
  return detail::timed(4, "weak Mordell-Weil sandwich on the dataset", 30, [&](CheckResult& r) {
    using namespace elliptic;
    bool saw_rank0 = false;
    for (const auto& rec : load_dataset_file(o.dataset)) {
      for (int n : {2, 3, 4}) {
        auto q = weak_mw_quotient(rec.data, n);
        std::uint64_t expect = upow(n, rec.data.generators.size()) *
                               torsion_quotient_reps(rec.data.curve, rec.data.torsion, n).size();
        auto where = [&] { return rec.data.curve.str() + " n=" + std::to_string(n); };
        r.expect(q.cardinality == expect, where);
        r.expect(q.lower <= q.cardinality && q.cardinality <= q.upper, where);
      }
      if (rec.data.curve.a() == Rational(-1) && rec.data.curve.b().is_zero()) {
        auto q = weak_mw_quotient(rec.data, 2);
        saw_rank0 = q.cardinality == 4 && q.upper == 5;
      }
    }
    r.expect(saw_rank0, [] { return "y^2 = x^3 - x missing or |E/2E| != 4"; });
  });
}

inline CheckResult quotient_bound(const Options& o) {
  return detail::timed(5, "quotient bound on cyclic-module sequences", 30, [&](CheckResult& r) {
    using namespace ultra;
    detail::Rng rng(o.seed + 5);
    for (int t = 0; t < 50; ++t) {
      SeqExpr mod = rng() % 4 == 0 ? seq_const(detail::draw(rng, 1, 360))
                                   : seq_add(seq_mul(seq_const(detail::draw(rng, 1, 5)), seq_index()),
                                             seq_const(detail::draw(rng, 1, 12)));
      // the first generator is 1 + m_i * (random), which generates every Z/m_i
      std::vector<SeqExpr> gens{seq_add(seq_mul(mod, detail::random_seq(rng)), seq_const(1))};
      std::size_t extra = rng() % 3;
      for (std::size_t j = 0; j < extra; ++j) gens.push_back(detail::random_seq(rng));
      std::uint64_t k = 2 + rng() % 3;
      auto rep = quotient_bound_check(CyclicModuleSeq(mod), gens, k, 1000);
      r.expect(rep.ok, [&] {
        return "moduli " + to_string(mod) + " k=" + std::to_string(k) + " index " + std::to_string(rep.first_violation);
      });
    }
  });
}

inline CheckResult los_principal(const Options& o) {
  return detail::timed(6, "Los equivalence for principal oracles", 10, [&](CheckResult& r) {
    using namespace ultra;
    static const char* const shapes[] = {
        "x = y",          "x < y",        "2 | x",          "3 | x + y",         "Z(x)",          "N(x - y)",
        "x * x < y + 3",  "!(x = y) & 2 | y", "x < y or y < x", "5 | x * y - 1", "N(x) -> 4 | x*x", "x = 0 <-> y = 0",
        "Z(x) & 3 | x",       "7 | x - y",     "x * y = y * x"};
    detail::Rng rng(o.seed + 6);
    std::size_t supported = 0;
    for (int attempts = 0; supported < 500 && attempts < 5000; ++attempts) {
      const char* src = shapes[rng() % std::size(shapes)];
      auto f = formula::parse(src);
      HyperEnv env{{"x", HyperRational(detail::random_seq(rng))}, {"y", HyperRational(detail::random_seq(rng))}};
      Index i0 = rng() % 60;
      auto u = UltrafilterOracle::principal(i0);
      bool los;
      try {
        los = los_eval(u, f, env);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::UnsupportedTruthSet) continue;
        throw;
      }
      ++supported;
      bool truth = componentwise(f, env, i0) == formula::TriBool::True;
      r.expect(los == truth, [&] {
        return std::string(src) + " with x=" + env.at("x").str() + ", y=" + env.at("y").str() + " at " + std::to_string(i0);
      });
    }
    r.expect(supported == 500, [&] { return "only " + std::to_string(supported) + " supported instances"; });
  });
}

inline CheckResult ultrafilter_laws(const Options& o) {
  return detail::timed(7, "lazy ultrafilter laws and log replay", 10, [&](CheckResult& r) {
    using namespace ultra;
    detail::Rng rng(o.seed + 7);
    const HyperEnv omega{{"x", HyperRational(seq_index())}};
    const auto even = formula::parse("2 | x");
    const auto odd = formula::parse("2 | x + 1");
    for (int seq = 0; seq < 1000; ++seq) {
      auto u = UltrafilterOracle::lazy_generic();
      auto where = [&] { return "query sequence " + std::to_string(seq); };
      // the paired parity query comes first on a third of the sequences
      if (seq % 3 == 0) r.expect(los_eval(u, even, omega) != los_eval(u, odd, omega), where);
      std::vector<PeriodicSet> accepted;
      for (int q = 0; q < 8; ++q) {
        PeriodicSet s = detail::random_set(rng);
        bool a = u.decides(s);
        bool b = u.decides(s.complement());
        r.expect(a != b, where);
        if (s.is_cofinite()) r.expect(a, where);
        if (s.is_finite()) r.expect(!a, where);
        accepted.push_back(a ? s : s.complement());
      }
      r.expect(!u.decides(PeriodicSet::empty()), where);
      for (std::size_t i = 0; i < accepted.size(); ++i) {
        for (std::size_t j = i; j < accepted.size(); ++j) r.expect(u.decides(intersect(accepted[i], accepted[j])), where);
        r.expect(u.decides(unite(accepted[i], detail::random_set(rng))), where);
      }
      r.expect(los_eval(u, even, omega) != los_eval(u, odd, omega), where);
      auto log = u.log_json().dump();
      r.expect(UltrafilterOracle::replay(u.log_json()).log_json().dump() == log, where);
    }
  });
}

inline CheckResult dp_witness(const Options&) {
  return detail::timed(8, "valuation sequence of 2^i", 1, [&](CheckResult& r) {
    using namespace ultra;
    HyperEnv env{{"x", parse_hyper("2^i")}};
    auto dp = hyper_dp(2, env.at("x"));
    r.expect(to_string(dp) == "i", [&] { return "hyper_dp printed " + to_string(dp); });
    for (Index i = 0; i < 200; ++i) r.expect(eval(dp, i) == Integer(i), [&] { return "index " + std::to_string(i); });
    for (unsigned k = 0; k <= 64; ++k) {
      auto s = truth_set(formula::divides(formula::pow(formula::num(2), k), formula::var("x")), env);
      r.expect(s.is_cofinite() && s == PeriodicSet::from(k), [&] { return "2^" + std::to_string(k) + " | 2^i gave " + s.str(); });
    }
  });
}

inline CheckResult galois_connection(const Options& o) {
  return detail::timed(9, "ideal/filter correspondence clauses", 10, [&](CheckResult& r) {
    using namespace ideals;
    detail::Rng rng(o.seed + 9);
    const std::vector<int> primes = {2, 3, 5, 7, 11};
    for (int t = 0; t < 200; ++t) {
      Integer g = 1;
      while (g < 2) {
        g = 1;
        for (int p : primes)
          for (int e = static_cast<int>(rng() % 3); e > 0; --e) g *= p;
      }
      std::vector<Integer> q;
      for (int p : primes)
        if (rng() % 2 == 0) q.emplace_back(p);
      if (q.empty()) q.emplace_back(primes[rng() % primes.size()]);
      auto rep = galois_checks(FGIdeal(g), FilterDesc({PrimeSet(q)}), o.galois_bound);
      for (const auto& c : rep.clauses)
        r.expect(c.pass, [&] { return c.name + " for I=(" + g.str() + "), F=<" + PrimeSet(q).str() + ">"; });
    }
    auto four = galois_checks(FGIdeal(4), filter_of_ideal(FGIdeal(4)), o.galois_bound);
    r.expect(four.pass() && four.strictness_witness == Integer(2), [] { return "no strictness witness 2 at I=(4)"; });
  });
}

inline CheckResult radical_prime(const Options&) {
  return detail::timed(10, "radical iff prime, exhaustive in window 12", 30, [&](CheckResult& r) {
    using namespace ideals;
    for (auto m : {OrderedSemigroupModel::nat(12), OrderedSemigroupModel::ppower(2, 12)}) {
      auto rep = radical_prime_exhaustive(m);
      r.expect(rep.pass() && rep.wrep_count > 0, [&] {
        std::string s = "counterexample {";
        for (auto e : rep.counterexample->elements()) s += m.label(e) + ",";
        return s + "}";
      });
    }
  });
}

inline CheckResult valuation_correspondence(const Options&) {
  return detail::timed(11, "S(I) / I(T) correspondence on the valuation ring", 5, [&](CheckResult& r) {
    for (int p : {2, 3, 5}) {
      auto rep = ideals::correspondence_check(p, 50, 64);
      r.expect(rep.pass() && rep.k_checked == 50, [&] { return "p=" + std::to_string(p) + ": " + rep.failure.value_or("short"); });
    }
  });
}

/// Criteria 1-11; criterion 12 compares two runs of this battery.
inline std::vector<CheckResult> run_all(const Options& o) {
  return {factorization_round_trip(o), valuation_axioms(o), elliptic_group_axioms(o), weak_mw_sandwich(o),
          quotient_bound(o),           los_principal(o),    ultrafilter_laws(o),      dp_witness(o),
          galois_connection(o),        radical_prime(o),    valuation_correspondence(o)};
}

/// RunReport. Timings are left out unless asked for, so reports compare byte for byte.
inline nlohmann::ordered_json run_report(const std::vector<CheckResult>& results, bool timing) {
  nlohmann::ordered_json j;
  bool ok = true;
  double total = 0;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : results) {
    ok = ok && c.pass();
    total += c.seconds;
    nlohmann::ordered_json cj;
    cj["id"] = c.id;
    cj["name"] = c.name;
    cj["status"] = c.pass() ? "pass" : "fail";
    cj["cases"] = c.cases;
    cj["failures"] = c.failures;
    cj["counterexample"] = c.counterexample ? nlohmann::ordered_json(*c.counterexample) : nlohmann::ordered_json(nullptr);
    cj["within_time_limit"] = c.within_time();
    if (timing) {
      cj["elapsed_s"] = c.seconds;
      cj["limit_s"] = c.limit_seconds;
    }
    checks.push_back(cj);
  }
  j["status"] = ok ? "pass" : "fail";
  if (timing) j["elapsed_s"] = total;
  j["checks"] = checks;
  return j;
}

}  // namespace hyperarith::suite
