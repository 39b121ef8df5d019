#pragma once

// Interchange formats.
//
//   cover design   {"n":int,"m":int|null,"k":int,"handles":[[int,...],...]}
//   design meta    {"method":str,"handle_count":int,"lower_bound":int|null}
//   weighted spec  {"weights":[real,...],"log_q":real}
//   cube records   one {"coords":[int,...],"value":int} per line
//   marginals      one {"pattern":[int|"*",...],"sum":int} per line

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "margcover/bounds.hpp"
#include "margcover/constructions.hpp"
#include "margcover/cover_core.hpp"
#include "margcover/cube_sim.hpp"
#include "margcover/errors.hpp"
#include "margcover/weighted.hpp"

namespace margcover {

using Json = nlohmann::ordered_json;

inline Json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max())) return v.convert_to<std::uint64_t>();
  return v.str();
}

inline Json design_to_json(const CoverDesign& d) {
  Json j;
  j["n"] = d.n();
  j["m"] = d.m() ? Json(*d.m()) : Json(nullptr);
  j["k"] = d.k();
  Json handles = Json::array();
  for (const auto& h : d.handles()) handles.push_back(std::vector<int>(h.begin(), h.end()));
  j["handles"] = std::move(handles);
  return j;
}

inline CoverDesign design_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ValidationError("cover design must be a JSON object");
    for (const char* field : {"n", "k", "handles"}) {
      if (!j.contains(field)) throw ValidationError(std::string("cover design lacks \"") + field + "\"");
    }
    std::optional<int> m;
    if (j.contains("m") && !j.at("m").is_null()) m = j.at("m").get<int>();
    std::vector<DimSet> handles;
    for (const auto& h : j.at("handles")) handles.emplace_back(h.get<std::vector<int>>());
    return CoverDesign(j.at("n").get<int>(), m, j.at("k").get<int>(), std::move(handles));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed cover design: ") + e.what());
  }
}

inline Json design_meta(const CoverDesign& d, std::string_view method) {
  Json j;
  j["method"] = method;
  j["handle_count"] = d.handle_count();
  j["lower_bound"] = d.m() ? big_to_json(covering_lower_bound(d.n(), *d.m(), d.k())) : Json(nullptr);
  return j;
}

inline Json report_to_json(const CoverReport& r) {
  Json j;
  j["valid"] = r.valid;
  j["handle_count"] = r.handle_count;
  Json unc = Json::array();
  for (const auto& s : r.uncovered) unc.push_back(std::vector<int>(s.begin(), s.end()));
  j["uncovered"] = std::move(unc);
  return j;
}

inline Json bounds_to_json(const BoundsReport& b) {
  Json j;
  j["n"] = b.n;
  j["d"] = b.d;
  j["k"] = b.k;
  j["q"] = b.q;
  j["f_bound"] = b.f_bound;
  j["r_lower"] = b.r_lower;
  j["c_lower"] = b.c_lower ? big_to_json(*b.c_lower) : Json(nullptr);
  j["naive_r"] = big_to_json(b.naive_r);
  return j;
}

inline WeightedSpec weighted_from_json(const Json& j) {
  try {
    WeightedSpec s{j.at("weights").get<std::vector<double>>(), j.at("log_q").get<double>()};
    s.validate();
    return s;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed weighted spec: ") + e.what());
  }
}

inline Json metrics_to_json(const RoundMetrics& m) {
  Json j;
  j["replication_rate"] = m.replication_rate;
  j["tuple_copies"] = m.tuple_copies;
  j["max_reducer_load"] = m.max_reducer_load;
  j["reducer_count"] = m.reducer_count;
  j["marginals_computed"] = m.marginals_computed;
  j["outputs_emitted"] = m.outputs_emitted;
  return j;
}

inline Json pattern_to_json(const MarginalKey& key) {
  Json p = Json::array();
  for (auto v : key.pattern) p.push_back(v == MarginalKey::kStar ? Json("*") : Json(v));
  return p;
}

inline Json check_to_json(const RoundCheck& c) {
  Json j;
  j["ok"] = c.ok();
  j["mismatches"] = c.mismatches.size();
  j["disagreements"] = c.disagreements.size();
  j["wrong_order"] = c.wrong_order.size();
  j["duplicates"] = c.duplicates;
  j["missing"] = c.missing;
  Json examples = Json::array();
  for (std::size_t i = 0; i < c.mismatches.size() && i < 5; ++i) {
    examples.push_back({{"pattern", pattern_to_json(c.mismatches[i].key)},
                        {"got", c.mismatches[i].got},
                        {"expected", c.mismatches[i].expected}});
  }
  j["mismatch_examples"] = std::move(examples);
  return j;
}

inline void write_marginals_ndjson(std::ostream& os, const MarginalTable& table) {
  for (const auto& e : table.entries) {
    Json j;
    j["pattern"] = pattern_to_json(e.key);
    j["sum"] = e.sum;
    os << j.dump() << '\n';
  }
}

inline MarginalTable read_marginals_ndjson(std::istream& is, int k) {
  MarginalTable t;
  t.k = k;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = Json::parse(line);
      MarginalEntry e;
      for (const auto& v : j.at("pattern")) {
        e.key.pattern.push_back(v.is_string() && v.get<std::string>() == "*" ? MarginalKey::kStar
                                                                              : v.get<std::int64_t>());
      }
      e.sum = j.at("sum").get<std::int64_t>();
      t.entries.push_back(std::move(e));
    } catch (const Json::exception& e) {
      throw ValidationError("marginal line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  std::stable_sort(t.entries.begin(), t.entries.end(),
                   [](const MarginalEntry& a, const MarginalEntry& b) { return a.key < b.key; });
  return t;
}

inline void write_cube_ndjson(std::ostream& os, const DataCube& cube) {
  for (std::uint64_t c = 0; c < cube.size(); ++c) {
    Json j;
    j["coords"] = cube.coords(c);
    j["value"] = cube.values()[c];
    os << j.dump() << '\n';
  }
}

/// Reads cube records. Extents come from `spec` when given, otherwise from
/// the largest coordinate seen per dimension. Absent cells hold 0.
inline DataCube read_cube_ndjson(std::istream& is, std::optional<CubeSpec> spec = std::nullopt) {
  std::vector<std::pair<std::vector<std::uint32_t>, std::int64_t>> records;
  std::string line;
  std::size_t lineno = 0;
  std::size_t arity = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = Json::parse(line);
      auto coords = j.at("coords").get<std::vector<std::int64_t>>();
      if (records.empty()) arity = coords.size();
      if (coords.size() != arity || arity == 0) throw ValidationError("inconsistent coordinate arity");
      std::vector<std::uint32_t> xs;
      for (auto c : coords) {
        if (c < 0 || c > UINT32_MAX) throw ValidationError("coordinate out of range");
        xs.push_back(static_cast<std::uint32_t>(c));
      }
      records.emplace_back(std::move(xs), j.at("value").get<std::int64_t>());
    } catch (const Json::exception& e) {
      throw ValidationError("cube line " + std::to_string(lineno) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("cube line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!spec) {
    if (records.empty()) throw ValidationError("empty cube file and no extents given");
    CubeSpec s{std::vector<std::uint32_t>(arity, 1)};
    for (const auto& [xs, v] : records)
      for (std::size_t i = 0; i < arity; ++i) s.extents[i] = std::max(s.extents[i], xs[i] + 1);
    spec = s;
  }
  spec->validate();
  DataCube blank(*spec, std::vector<std::int64_t>(spec->cells(), 0));
  std::vector<std::int64_t> values(blank.size(), 0);
  std::vector<bool> seen(blank.size(), false);
  for (const auto& [xs, v] : records) {
    const auto idx = blank.index(xs);
    if (seen[idx]) throw ValidationError("duplicate cube record for one cell");
    seen[idx] = true;
    values[idx] = v;
  }
  return DataCube(*spec, std::move(values));
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

}  // namespace margcover
