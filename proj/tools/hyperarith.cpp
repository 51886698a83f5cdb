// hyperarith: command-line front end. Every subcommand prints one JSON
// document on stdout, or nothing on stdout and an error document on stderr.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperarith/config.hpp"
#include "hyperarith/elliptic/dataset.hpp"
#include "hyperarith/formula/builtins.hpp"
#include "hyperarith/formula/eval.hpp"
#include "hyperarith/formula/parser.hpp"
#include "hyperarith/ideals/dvr.hpp"
#include "hyperarith/suite.hpp"
#include "hyperarith/ultra/truth_set.hpp"

using namespace hyperarith;
using json = nlohmann::ordered_json;

namespace {

namespace exit_code {
constexpr int ok = 0;
constexpr int is_false = 1;
constexpr int usage = 2;
constexpr int zero_argument = 3;
constexpr int unknown = 4;
constexpr int dataset = 5;
constexpr int unsupported = 6;
constexpr int scenario = 7;
constexpr int replay_mismatch = 8;
}  // namespace exit_code

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroArgument: return exit_code::zero_argument;
    case ErrorCode::DatasetViolation: return exit_code::dataset;
    case ErrorCode::UnsupportedTruthSet:
    case ErrorCode::UnsupportedValuation: return exit_code::unsupported;
    case ErrorCode::MalformedScenario: return exit_code::scenario;
    case ErrorCode::OracleReplayMismatch: return exit_code::replay_mismatch;
    default: return exit_code::usage;
  }
}

/// Thrown by commands to report a JSON result together with its exit code.
struct Outcome {
  json body;
  int code = exit_code::ok;
};

std::pair<std::string, std::string> split_binding(const std::string& arg) {
  auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::ParseError, "expected name=value, got '" + arg + "'");
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

std::map<std::string, std::string> bindings(const std::vector<std::string>& args) {
  std::map<std::string, std::string> out;
  for (const auto& a : args) {
    auto [k, v] = split_binding(a);
    if (!out.emplace(k, v).second) throw Error(ErrorCode::ParseError, "'" + k + "' given twice");
  }
  return out;
}

const std::string& need(const std::map<std::string, std::string>& b, const std::string& key) {
  auto it = b.find(key);
  if (it == b.end()) throw Error(ErrorCode::ParseError, "missing argument " + key + "=...");
  return it->second;
}

json point_json(const elliptic::CurvePoint& p) {
  if (p.is_infinity()) return "O";
  return json::array({p.x().str(), p.y().str()});
}

elliptic::CurvePoint parse_point(const std::string& s) {
  if (s == "O" || s == "inf") return {};
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "point must be x,y or O, got '" + s + "'");
  return {Rational::parse(s.substr(0, comma)), Rational::parse(s.substr(comma + 1))};
}

// ---------------------------------------------------------------------------

Outcome cmd_factor(const std::string& text, const Config& cfg) {
  PrimeTable table(cfg.sieve_bound);
  auto f = factor_embed(Rational::parse(text), table);
  json exps = json::object();
  for (const auto& [p, e] : f.exps) exps[p.str()] = e;
  return {json{{"sign", f.sign}, {"exps", exps}}};
}

Outcome cmd_eval(const std::string& text, const std::vector<std::string>& args, bool as_builtin, const Config& cfg) {
  formula::Formula f;
  formula::Environment env;
  auto b = bindings(args);
  if (as_builtin) {
    auto def = formula::builtin_def(text);
    f = def.formula;
    for (const auto& p : def.params) env[p] = Rational::parse(need(b, p));
    if (b.size() != def.params.size()) throw Error(ErrorCode::ArityError, "unexpected binding for builtin " + text);
  } else {
    f = formula::parse(text);
    for (const auto& [k, v] : b) env[k] = Rational::parse(v);
  }
  auto r = formula::eval(f, env, cfg.bound);
  int code = r == formula::TriBool::True ? exit_code::ok
             : r == formula::TriBool::False ? exit_code::is_false
                                            : exit_code::unknown;
  return {json{{"formula", formula::to_string(f)}, {"bound", cfg.bound}, {"result", formula::to_string(r)}}, code};
}

Outcome cmd_curve_op(const std::string& op, const std::vector<std::string>& args) {
  using namespace elliptic;
  auto b = bindings(args);
  Curve c(Rational::parse(need(b, "A")), Rational::parse(need(b, "B")));
  json out{{"curve", c.str()}};
  if (op == "add") {
    auto p = parse_point(need(b, "P"));
    auto q = parse_point(need(b, "Q"));
    out["result"] = point_json(add(c, p, q));
  } else if (op == "mul") {
    auto p = parse_point(need(b, "P"));
    Rational n = Rational::parse(need(b, "n"));
    if (!n.is_integer()) throw Error(ErrorCode::ParseError, "n must be an integer");
    out["result"] = point_json(smul(c, n.num(), p));
  } else {
    auto t = torsion_points(c);
    auto pts = json::array();
    for (const auto& p : t) pts.push_back(point_json(p));
    out["order"] = t.size();
    out["points"] = pts;
  }
  return {out};
}

Outcome cmd_weakmw(int n, std::optional<std::size_t> record, const std::string& dataset) {
  using namespace elliptic;
  auto recs = load_dataset_file(dataset);
  if (record && *record >= recs.size())
    throw Error(ErrorCode::ParseError, "record " + std::to_string(*record) + " out of range");
  auto rows = json::array();
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (record && i != *record) continue;
    const auto& m = recs[i].data;
    auto q = weak_mw_quotient(m, n);
    auto reps = json::array();
    for (const auto& p : q.representatives) reps.push_back(point_json(p));
    rows.push_back(json{{"record", i},
                        {"curve", m.curve.str()},
                        {"rank", m.generators.size()},
                        {"torsion_order", m.torsion.size()},
                        {"n", n},
                        {"cardinality", q.cardinality},
                        {"lower", q.lower},
                        {"upper", q.upper},
                        {"classical_bound", classical_upper_bound(m, n)},
                        {"sandwich", "pass"},
                        {"representatives", reps}});
  }
  return {json{{"n", n}, {"records", rows}}};
}

Outcome cmd_dataset_validate(const std::string& dataset) {
  auto recs = elliptic::load_dataset_file(dataset);
  std::size_t max_rank = 0;
  for (const auto& r : recs) max_rank = std::max(max_rank, r.data.generators.size());
  return {json{{"status", "ok"}, {"records", recs.size()}, {"max_rank", max_rank}}};
}

ultra::UltrafilterOracle parse_oracle(const std::string& spec) {
  if (spec == "lazy") return ultra::UltrafilterOracle::lazy_generic();
  const std::string prefix = "principal:";
  if (spec.rfind(prefix, 0) == 0) {
    std::string n = spec.substr(prefix.size());
    if (!n.empty() && n.find_first_not_of("0123456789") == std::string::npos)
      return ultra::UltrafilterOracle::principal(std::stoull(n));
  }
  throw Error(ErrorCode::ParseError, "oracle must be 'lazy' or 'principal:N', got '" + spec + "'");
}

Outcome cmd_hyper_eval(const std::string& oracle_spec, const std::string& text, const std::vector<std::string>& args) {
  auto oracle = parse_oracle(oracle_spec);
  auto f = formula::parse(text);
  ultra::HyperEnv env;
  for (const auto& [k, v] : bindings(args)) env.emplace(k, ultra::parse_hyper(v));
  auto set = ultra::truth_set(f, env);
  bool r = oracle.decides(set);
  json o{{"kind", oracle.kind() == ultra::UltrafilterOracle::Kind::Principal ? "principal" : "lazy"}};
  if (oracle.kind() == ultra::UltrafilterOracle::Kind::Principal)
    o["index"] = oracle.point();
  else
    o["log"] = oracle.log_json();
  return {json{{"formula", formula::to_string(f)}, {"truth_set", set.to_json()}, {"result", r}, {"oracle", o}},
          r ? exit_code::ok : exit_code::is_false};
}

Outcome cmd_hyper_dp(const std::string& p, const std::string& x) {
  Rational pr = Rational::parse(p);
  if (!pr.is_integer()) throw Error(ErrorCode::NotPrime, p + " is not prime");
  auto h = ultra::parse_hyper(x);
  return {json{{"p", pr.str()}, {"x", h.str()}, {"dp", ultra::to_string(ultra::hyper_dp(pr.num(), h))}}};
}

Outcome cmd_oracle_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  json log;
  try {
    log = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("log is not JSON: ") + e.what());
  }
  auto o = ultra::UltrafilterOracle::replay(log);
  auto [a, m] = o.commitment();
  return {json{{"status", "match"}, {"decisions", o.decisions().size()}, {"commitment", {a, m}}}};
}

// --- semigroup scenarios ----------------------------------------------------

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorCode::MalformedScenario, msg); }

std::string element_text(const json& v) {
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_string()) return v.get<std::string>();
  malformed("subset elements must be integers or fraction strings, got " + v.dump());
}

json labels(const ideals::SubsemigroupTrunc& t) {
  auto a = json::array();
  for (auto e : t.elements()) a.push_back(t.model().label(e));
  return a;
}

Outcome cmd_semigroup(const std::string& path) {
  using namespace ideals;
  json sc;
  {
    std::ifstream in(path);
    if (!in) malformed("cannot open " + path);
    try {
      sc = json::parse(in);
    } catch (const json::exception& e) {
      malformed(std::string("not JSON: ") + e.what());
    }
  }
  if (!sc.is_object()) malformed("scenario must be an object");
  for (const auto& [k, v] : sc.items())
    if (k != "model" && k != "p" && k != "den" && k != "window" && k != "subset" && k != "checks")
      malformed("unknown field '" + k + "'");
  if (!sc.contains("model") || !sc["model"].is_string()) malformed("missing model");
  if (!sc.contains("window") || !sc["window"].is_number_unsigned()) malformed("window must be a nonnegative integer");
  const std::string kind = sc["model"];
  const auto window = sc["window"].get<std::size_t>();
  auto uint_field = [&](const char* key, std::uint64_t dflt) {
    if (!sc.contains(key)) return dflt;
    if (!sc[key].is_number_unsigned()) malformed(std::string(key) + " must be a positive integer");
    return sc[key].get<std::uint64_t>();
  };

  try {
    std::optional<OrderedSemigroupModel> model;
    if (kind == "nat") model = OrderedSemigroupModel::nat(window);
    else if (kind == "nonnegrat") model = OrderedSemigroupModel::nonnegrat(window, uint_field("den", 6));
    else if (kind == "ppower") model = OrderedSemigroupModel::ppower(uint_field("p", 2), window);
    else malformed("model must be nat, nonnegrat or ppower");
    if (kind == "ppower" && !is_prime(Integer(model->p()))) malformed("p must be prime");

    std::optional<SubsemigroupTrunc> t;
    if (sc.contains("subset")) {
      if (!sc["subset"].is_array()) malformed("subset must be an array");
      if (sc["subset"].empty()) malformed("subset is empty");
      std::vector<bool> in(model->size(), false);
      for (const auto& v : sc["subset"]) in[model->index_of(element_text(v))] = true;
      t.emplace(*model, std::move(in));
    }

    std::vector<std::string> checks;
    if (sc.contains("checks")) {
      if (!sc["checks"].is_array()) malformed("checks must be an array");
      for (const auto& c : sc["checks"]) {
        if (!c.is_string()) malformed("check names are strings");
        checks.push_back(c);
      }
    } else if (t) {
      checks = {"radical", "prime", "hull", "wrep"};
    } else {
      checks = {"exhaustive"};
    }

    bool ok = true;
    auto results = json::array();
    std::optional<bool> rad;
    std::optional<bool> pri;
    for (const auto& name : checks) {
      json r{{"name", name}};
      bool pass = true;
      auto need_subset = [&] {
        if (!t) malformed("check '" + name + "' needs a subset");
      };
      if (name == "radical") {
        need_subset();
        auto [v, w] = radical_check(*t);
        rad = v;
        r["value"] = v;
        if (w) r["witness"] = json{{"x", model->label((*w)[0])}, {"root", model->label((*w)[1])}, {"n", (*w)[2]}};
      } else if (name == "prime") {
        need_subset();
        auto [v, w] = prime_check(*t);
        pri = v;
        r["value"] = v;
        if (w) r["witness"] = json::array({model->label(w->first), model->label(w->second)});
      } else if (name == "hull") {
        need_subset();
        auto h = convex_hull(*t);
        pass = convex_hull(h) == h && is_convex(h);
        r["value"] = labels(h);
      } else if (name == "wrep") {
        need_subset();
        auto w = wrep_closure(*t);
        pass = wrep_closure(w) == w && is_wrep(w);
        r["is_wrep"] = is_wrep(*t);
        r["value"] = labels(w);
      } else if (name == "exhaustive") {
        auto rep = radical_prime_exhaustive(*model);
        pass = rep.pass();
        r["subsets"] = rep.subsets;
        r["wrep_subsemigroups"] = rep.wrep_count;
        r["radical"] = rep.radical_count;
        if (rep.counterexample) r["counterexample"] = labels(*rep.counterexample);
      } else if (name == "correspondence") {
        if (kind != "nat") malformed("correspondence runs on the nat model (the value semigroup)");
        const std::uint64_t p = uint_field("p", 2);
        if (!is_prime(Integer(p))) malformed("p must be prime");
        auto rep = correspondence_check(p, std::min<std::size_t>(50, window), window, std::min<std::size_t>(10, window));
        pass = rep.pass();
        r["k_checked"] = rep.k_checked;
        r["subsets_checked"] = rep.subsets_checked;
        if (t && t->min() != 0) {
          auto lhs = S_of_I(I_of_T(*t, p), window);
          r["S_of_I_of_T"] = labels(lhs);
          pass = pass && lhs == wrep_closure(*t);
        }
        if (rep.failure) r["failure"] = *rep.failure;
      } else {
        malformed("unknown check '" + name + "'");
      }
      r["status"] = pass ? "pass" : "fail";
      ok = ok && pass;
      results.push_back(r);
    }
    if (rad && pri && t && is_wrep(*t)) {
      bool agree = *rad == *pri;
      ok = ok && agree;
      results.push_back(json{{"name", "radical_iff_prime"}, {"status", agree ? "pass" : "fail"}});
    }

    json m{{"kind", kind}, {"window", window}};
    if (kind == "ppower") m["p"] = model->p();
    if (kind == "nonnegrat") m["den"] = model->den();
    json out{{"status", ok ? "pass" : "fail"}, {"model", m}};
    if (t) out["subset"] = labels(*t);
    out["checks"] = results;
    return {out, ok ? exit_code::ok : exit_code::is_false};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedScenario) throw;
    throw Error(ErrorCode::MalformedScenario, e.what());
  }
}

Outcome cmd_suite(const Config& cfg, std::uint64_t seed, bool timing) {
  suite::Options o;
  o.dataset = cfg.dataset;
  o.seed = seed;
  o.galois_bound = cfg.galois_bound;
  auto results = suite::run_all(o);
  auto report = suite::run_report(results, timing);
  return {report, report["status"] == "pass" ? exit_code::ok : exit_code::is_false};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact valuations, definable formulas, elliptic curves, ultrapowers and ideal/filter models"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", "hyperarith 1.0.0");

  Config cfg;
  bool pretty = false;
  std::optional<long long> bound;
  std::optional<std::uint64_t> sieve_bound;
  std::optional<std::uint64_t> galois_bound;
  std::optional<std::string> dataset;
  app.add_flag("--pretty", pretty, "Indent the JSON output");
  app.add_option("--bound", bound, "Height bound for quantifier search");
  app.add_option("--sieve-bound", sieve_bound, "Prime sieve size");
  app.add_option("--galois-bound", galois_bound, "Membership scan bound for galois checks");
  app.add_option("--dataset", dataset, "Curve dataset (JSON lines)");

  std::function<Outcome()> run;

  std::string factor_x;
  auto* factor = app.add_subcommand("factor", "Signed prime factorization of a rational");
  factor->add_option("x", factor_x)->required();
  factor->callback([&] { run = [&] { return cmd_factor(factor_x, cfg); }; });

  std::string eval_text;
  std::vector<std::string> eval_args;
  bool eval_builtin = false;
  auto* ev = app.add_subcommand("eval", "Evaluate a formula under name=value bindings");
  ev->add_flag("--builtin", eval_builtin, "Treat the text as a builtin name, bound by parameter names");
  ev->add_option("formula", eval_text)->required();
  ev->add_option("bindings", eval_args);
  ev->callback([&] { run = [&] { return cmd_eval(eval_text, eval_args, eval_builtin, cfg); }; });

  auto* curve = app.add_subcommand("curve", "Elliptic curve arithmetic");
  curve->require_subcommand(1, 1);
  std::vector<std::string> curve_args;
  for (const char* op : {"add", "mul", "torsion"}) {
    auto* sub = curve->add_subcommand(op, std::string("curve ") + op + " (A=.. B=.. P=x,y Q=x,y n=..)");
    sub->add_option("args", curve_args);
    sub->callback([&, name = std::string(op)] { run = [&, name] { return cmd_curve_op(name, curve_args); }; });
  }
  int weak_n = 2;
  std::optional<std::size_t> weak_record;
  auto* weak = curve->add_subcommand("weakmw", "E/nE from the dataset records");
  weak->add_option("--n", weak_n, "n >= 2")->check(CLI::Range(2, 64));
  weak->add_option("--record", weak_record, "0-based record index; all records when omitted");
  weak->callback([&] { run = [&] { return cmd_weakmw(weak_n, weak_record, cfg.dataset); }; });

  auto* hyper = app.add_subcommand("hyper", "Ultrapower sequences");
  hyper->require_subcommand(1, 1);
  std::string oracle_spec = "lazy";
  std::string hyper_text;
  std::vector<std::string> hyper_args;
  auto* heval = hyper->add_subcommand("eval", "Decide a formula in the ultrapower (Los)");
  heval->add_option("--oracle", oracle_spec, "principal:N or lazy");
  heval->add_option("formula", hyper_text)->required();
  heval->add_option("bindings", hyper_args);
  heval->callback([&] { run = [&] { return cmd_hyper_eval(oracle_spec, hyper_text, hyper_args); }; });
  std::string dp_p;
  std::string dp_x;
  auto* dp = hyper->add_subcommand("dp", "p-power part of a sequence, as an exponent sequence");
  dp->add_option("p", dp_p)->required();
  dp->add_option("x", dp_x)->required();
  dp->callback([&] { run = [&] { return cmd_hyper_dp(dp_p, dp_x); }; });
  std::string replay_path;
  auto* replay = hyper->add_subcommand("oracle-replay", "Replay a lazy oracle log");
  replay->add_option("log", replay_path)->required();
  replay->callback([&] { run = [&] { return cmd_oracle_replay(replay_path); }; });

  std::string scenario_path;
  auto* sg = app.add_subcommand("semigroup", "Run a semigroup scenario file");
  sg->add_option("scenario", scenario_path)->required();
  sg->callback([&] { run = [&] { return cmd_semigroup(scenario_path); }; });

  std::optional<std::string> validate_path;
  auto* dv = app.add_subcommand("dataset-validate", "Validate a curve dataset");
  dv->add_option("path", validate_path);
  dv->callback([&] { run = [&] { return cmd_dataset_validate(validate_path.value_or(cfg.dataset)); }; });

  std::uint64_t seed = suite::Options{}.seed;
  bool timing = false;
  auto* st = app.add_subcommand("suite", "Run the acceptance battery");
  st->add_option("--seed", seed);
  st->add_flag("--timing", timing, "Include elapsed times (breaks byte-for-byte comparison)");
  st->callback([&] { run = [&] { return cmd_suite(cfg, seed, timing); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::usage;
  }

  try {
    cfg.dataset = HYPERARITH_DEFAULT_DATASET;
    cfg = load_config(cfg);
    if (bound) cfg.bound = *bound;
    if (sieve_bound) cfg.sieve_bound = *sieve_bound;
    if (galois_bound) cfg.galois_bound = *galois_bound;
    if (dataset) cfg.dataset = *dataset;
    Outcome out = run();
    std::cout << (pretty ? out.body.dump(2) : out.body.dump()) << '\n';
    return out.code;
  } catch (const DatasetError& e) {
    std::cerr << json{{"error", "DatasetViolation"}, {"record", e.record()}, {"message", e.what()}}.dump() << '\n';
    return exit_code::dataset;
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return exit_code::usage;
  }
}
