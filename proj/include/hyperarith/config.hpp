#pragma once

// Key=value settings for the command-line front end. The file named by
// HYPERARITH_CONFIG is read first; command-line flags override it.
//
//   # comment
//   bound = 50
//   dataset = "data/curves.jsonl"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "hyperarith/errors.hpp"

namespace hyperarith {

struct Config {
  std::uint64_t sieve_bound = 1'000'000;
  long long bound = 50;  // height bound for formula quantifiers
  std::string dataset;
  std::uint64_t galois_bound = 10'000;
  std::uint64_t trunc = 1000;  // index truncation for hyper sequences
  std::size_t window = 12;     // default semigroup window

  static const std::map<std::string, std::string>& known_keys() {
    static const std::map<std::string, std::string> keys{
        {"sieve_bound", "prime sieve size"},
        {"bound", "height bound for quantifier search"},
        {"dataset", "curve dataset path"},
        {"galois_bound", "membership scan bound for galois checks"},
        {"trunc", "index truncation for sequence checks"},
        {"window", "default semigroup window"},
    };
    return keys;
  }

  void set(const std::string& key, const std::string& value) {
    auto num = [&](auto& out) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size() || v < 0) throw std::invalid_argument(value);
        out = static_cast<std::remove_reference_t<decltype(out)>>(v);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "config key '" + key + "' needs a nonnegative integer, got '" + value + "'");
      }
    };
    if (key == "sieve_bound") num(sieve_bound);
    else if (key == "bound") num(bound);
    else if (key == "dataset") dataset = value;
    else if (key == "galois_bound") num(galois_bound);
    else if (key == "trunc") num(trunc);
    else if (key == "window") num(window);
    else throw Error(ErrorCode::ParseError, "unknown config key '" + key + "'");
  }
};

namespace detail {

inline std::string trim_ws(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline Config parse_config(std::istream& in, Config cfg = {}) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = detail::trim_ws(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim_ws(line.substr(0, eq));
    std::string value = detail::trim_ws(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    cfg.set(key, value);
  }
  return cfg;
}

/// Defaults, then the file named by HYPERARITH_CONFIG if set.
inline Config load_config(Config defaults = {}) {
  const char* path = std::getenv("HYPERARITH_CONFIG");
  if (path == nullptr || *path == '\0') return defaults;
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, std::string("cannot open config ") + path);
  return parse_config(f, std::move(defaults));
}

}  // namespace hyperarith
