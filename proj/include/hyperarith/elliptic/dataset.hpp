#pragma once

#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperarith/elliptic/mordell_weil.hpp"

namespace hyperarith::elliptic {

struct CurveRecord {
  MWData data;
  std::size_t torsion_order = 0;
};

namespace detail {

inline Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.get<long long>()));
  throw Error(ErrorCode::ParseError, "expected a fraction string, got " + v.dump());
}

inline CurveRecord parse_record(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "record is not an object");
  for (const char* key : {"A", "B", "rank", "generators", "torsion_order"})
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  Curve c(json_rational(j["A"]), json_rational(j["B"]));
  std::vector<CurvePoint> gens;
  if (!j["generators"].is_array()) throw Error(ErrorCode::ParseError, "generators must be an array");
  for (const auto& g : j["generators"]) {
    if (!g.is_array() || g.size() != 2) throw Error(ErrorCode::ParseError, "generator must be [x, y]");
    gens.emplace_back(json_rational(g[0]), json_rational(g[1]));
  }
  if (!j["rank"].is_number_unsigned() && !(j["rank"].is_number_integer() && j["rank"].get<long long>() >= 0))
    throw Error(ErrorCode::ParseError, "rank must be a nonnegative integer");
  CurveRecord rec{MWData{c, std::move(gens), torsion_points(c), j["rank"].get<std::size_t>()},
                  j["torsion_order"].get<std::size_t>()};
  validate(rec.data);
  if (rec.data.torsion.size() != rec.torsion_order)
    throw Error(ErrorCode::InvalidMWData, "torsion_order " + std::to_string(rec.torsion_order) +
                                              " but Lutz-Nagell finds " + std::to_string(rec.data.torsion.size()));
  return rec;
}

}  // namespace detail

/// JSON-lines curve dataset; blank lines are skipped. Rejects the whole
/// stream at the first bad record, naming its 0-based index.
inline std::vector<CurveRecord> load_dataset(std::istream& in) {
  std::vector<CurveRecord> out;
  std::string line;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(detail::parse_record(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw DatasetError(index, e.what());
    } catch (const Error& e) {
      throw DatasetError(index, e.what());
    }
    ++index;
  }
  return out;
}

inline std::vector<CurveRecord> load_dataset_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open dataset " + path);
  return load_dataset(f);
}

}  // namespace hyperarith::elliptic
