#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "hyperarith/formula/eval.hpp"
#include "hyperarith/formula/parser.hpp"

namespace hyperarith::formula {

/// A library formula together with the order of its free variables.
struct Builtin {
  Formula formula;
  std::vector<std::string> params;
};

namespace detail {

inline const char* const kAddE =
    "E(a, b, x0, x1, x2) & E(a, b, y0, y1, y2) & E(a, b, z0, z1, z2)"
    " & (x2 = 0 -> z0 = y0 & z1 = y1 & z2 = y2)"
    " & (y2 = 0 -> z0 = x0 & z1 = x1 & z2 = x2)"
    " & (x2 = 1 & y2 = 1 & x0 = y0 & x1 + y1 = 0 -> z0 = 0 & z1 = 1 & z2 = 0)"
    " & (x2 = 1 & y2 = 1 & x0 = y0 & x1 = y1 & x1 != 0 ->"
    "    z0 * (2 * x1)^2 = (3 * x0^2 + a)^2 - 2 * x0 * (2 * x1)^2"
    "    & z1 * (2 * x1) = (3 * x0^2 + a) * (x0 - z0) - 2 * x1^2 & z2 = 1)"
    " & (x2 = 1 & y2 = 1 & x0 != y0 ->"
    "    z0 * (y0 - x0)^2 = (y1 - x1)^2 - (x0 + y0) * (y0 - x0)^2"
    "    & z1 * (y0 - x0) = (y1 - x1) * (x0 - z0) - x1 * (y0 - x0) & z2 = 1)";

// Printed case split, denominators cleared; kept for comparison only.
inline const char* const kAddEVerbatim =
    "E(a, b, x0, x1, x2) & E(a, b, y0, y1, y2) & E(a, b, z0, z1, z2)"
    " & ((x2 = 0 -> z0 = y0 & z1 = y1 & z2 = y2)"
    " or (y2 = 0 -> z0 = x0 & z1 = x1 & z2 = x2)"
    " or (x0 = y0 & x1 != y1 -> z0 = 0 & z1 = 1 & z2 = 0)"
    " or (x0 = y0 & x1 = y1 & y0 != 0 ->"
    "    z0 * (2 * y0)^2 = (3 * x0^2 + a)^2 - (x0 + x1) * (2 * y0)^2"
    "    & z1 * (2 * y0) = -((3 * x0^2 + a) * z0) - (x1 * (2 * y0) - (3 * x0^2 + a) * x0) & z2 = 1)"
    " or (x0 != y0 ->"
    "    z0 * (y0 - x0)^2 = (y1 - x1)^2 - (x0 + x1) * (y0 - x0)^2"
    "    & z1 * (y0 - x0) = (y1 - x1) * z0 - (y0 * x1 - y1 * x0) & z2 = 1))";

inline std::vector<std::string> point(const std::string& stem) { return {stem + "0", stem + "1", stem + "2"}; }

inline std::vector<std::string> add_e_params() {
  std::vector<std::string> p{"a", "b"};
  for (const char* s : {"x", "y", "z"})
    for (auto& v : point(s)) p.push_back(v);
  return p;
}

inline std::vector<Term> vars(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(var(n));
  return out;
}

inline Formula add_e_on(const std::vector<std::string>& p, const std::vector<std::string>& q,
                        const std::vector<std::string>& r) {
  std::vector<std::string> to{"a", "b"};
  for (const auto* pt : {&p, &q, &r}) to.insert(to.end(), pt->begin(), pt->end());
  return instantiate(parse(kAddE), add_e_params(), vars(to));
}

inline Formula n_e(int k) {
  // P_1 .. P_k with P_{i+1} = P_i + P_1 and P_k the free point x.
  std::vector<std::vector<std::string>> pts;
  for (int i = 1; i <= k; ++i) pts.push_back(point("p" + std::to_string(i) + "_"));
  std::vector<Formula> parts;
  for (int i = 0; i + 1 < k; ++i) {
    parts.push_back(atom("E", {var("a"), var("b"), var(pts[i][0]), var(pts[i][1]), var(pts[i][2])}));
    parts.push_back(add_e_on(pts[i], pts[0], pts[i + 1]));
  }
  for (int j = 0; j < 3; ++j) parts.push_back(eq(var(pts[k - 1][j]), var("x" + std::to_string(j))));
  Formula body = conj(parts);
  for (int i = k - 1; i >= 0; --i)
    for (int j = 2; j >= 0; --j) body = exists(pts[i][j], body);
  return conjunction(atom("E", {var("a"), var("b"), var("x0"), var("x1"), var("x2")}), body);
}

inline Formula sim_e_n(int k) {
  Formula in_ne = instantiate(n_e(k), {"x0", "x1", "x2"}, vars(point("w")));
  Formula body = conjunction(in_ne, add_e_on(point("x"), point("w"), point("y")));
  return exists("w0", exists("w1", exists("w2", body)));
}

inline int parse_k(std::string_view name, std::string_view stem) {
  std::string_view inner = name.substr(stem.size() + 1, name.size() - stem.size() - 2);
  int k = 0;
  auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), k);
  if (ec != std::errc() || ptr != inner.data() + inner.size())
    throw Error(ErrorCode::BadParameter, "bad parameter in " + std::string(name));
  if (k < 2) throw Error(ErrorCode::BadParameter, std::string(stem) + " needs k >= 2");
  if (k > 12) throw Error(ErrorCode::BadParameter, std::string(stem) + " is generated only for k <= 12");
  return k;
}

inline bool has_param(std::string_view name, std::string_view stem) {
  return name.size() > stem.size() + 2 && name.substr(0, stem.size()) == stem && name[stem.size()] == '(' &&
         name.back() == ')';
}

}  // namespace detail

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"Z",  "N",    "N'",   "divides", "P",     "pw",    "pw'",
                                              "d_p", "d_p'", "lt",  "E",       "addE",  "addE_verbatim",
                                              "nE(k)", "simEn(k)"};
  return names;
}

/// Library formula by name. nE(k) and simEn(k) take a concrete k >= 2.
inline Builtin builtin_def(std::string_view name) {
  using detail::point;
  if (name == "Z") return {parse("Z(x)"), {"x"}};
  if (name == "N") return {parse("N(x)"), {"x"}};
  if (name == "N'")
    return {parse("exists a, b, c, d. x = a^2 + b^2 + c^2 + d^2 & Z(a) & Z(b) & Z(c) & Z(d)"), {"x"}};
  if (name == "divides") return {parse("Z(x) & Z(y) & (exists z. Z(z) & y = z * x)"), {"x", "y"}};
  if (name == "P")
    return {parse("N(x) & x != 1 & (forall y. y | x -> y = 1 or y = -1 or y = x or y = -x)"), {"x"}};
  if (name == "pw")
    return {parse("N(x) & N(y) & (y = 1 or (forall u. N(u) & u != 1 & u != -1 & u | y -> x | u))"), {"x", "y"}};
  if (name == "pw'") return {parse("pw(x, y) or (exists z. pw(x, z) & z * y = 1)"), {"x", "y"}};
  if (name == "d_p") return {parse("Z(x) & pw(p, y) & y | x & !(p * y | x)"), {"p", "x", "y"}};
  if (name == "d_p'")
    return {parse("x != 0 & (exists x1, x2, y1, y2. x2 * x = x1 & d_p(p, x1, y1) & d_p(p, x2, y2) & y2 * y = y1)"),
            {"p", "x", "y"}};
  if (name == "lt")
    return {parse("exists x1, x2, y1, y2. Z(x1) & Z(y1) & N(x2) & N(y2) & x2 != 0 & y2 != 0"
                  " & x * x2 = x1 & y * y2 = y1 & N(y1 * x2 - x1 * y2) & y1 * x2 - x1 * y2 != 0"),
            {"x", "y"}};
  if (name == "E")
    return {parse("((y^2 = x^3 + a * x + b & z = 1) or (x = 0 & y = 1 & z = 0)) & 4 * a^3 + 27 * b^2 != 0"),
            {"a", "b", "x", "y", "z"}};
  if (name == "addE") return {parse(detail::kAddE), detail::add_e_params()};
  if (name == "addE_verbatim") return {parse(detail::kAddEVerbatim), detail::add_e_params()};
  if (detail::has_param(name, "nE")) {
    std::vector<std::string> params{"a", "b"};
    for (auto& v : point("x")) params.push_back(v);
    return {detail::n_e(detail::parse_k(name, "nE")), params};
  }
  if (detail::has_param(name, "simEn")) {
    std::vector<std::string> params{"a", "b"};
    for (const char* s : {"x", "y"})
      for (auto& v : point(s)) params.push_back(v);
    return {detail::sim_e_n(detail::parse_k(name, "simEn")), params};
  }
  throw Error(ErrorCode::UnknownBuiltin, "unknown builtin '" + std::string(name) + "'");
}

inline Formula builtin(std::string_view name) { return builtin_def(name).formula; }

/// Environment binding a builtin's parameters positionally.
inline Environment bind_args(const Builtin& b, const std::vector<Rational>& args) {
  if (args.size() != b.params.size())
    throw Error(ErrorCode::ArityError,
                "expected " + std::to_string(b.params.size()) + " arguments, got " + std::to_string(args.size()));
  Environment env;
  for (std::size_t i = 0; i < args.size(); ++i) env[b.params[i]] = args[i];
  return env;
}

}  // namespace hyperarith::formula
