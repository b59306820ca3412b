#ifndef ADJOINTFORGE_JSON_IO_HPP
#define ADJOINTFORGE_JSON_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "adjoint.hpp"
#include "catalog.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "matroid.hpp"
#include "small_set.hpp"

// On-disk formats:
//   matroid     {"n": 6, "bases": [[0,1,2], ...]}
//               or {"field": 2, "matrix": [[1,0,...], ...]}
//   lattice     {"elements": 8, "leq_pairs": [[0,1], ...]}  (any generating
//               relation; the loader closes reflexively/transitively)
//   set family  {"universe": 7, "sets": [[0,2], ...]}       (canonical order)

namespace adjointforge {
namespace io {

using nlohmann::json;

inline json set_to_json(set64 s) {
  json arr = json::array();
  for (int e : bits::elements(s)) arr.push_back(e);
  return arr;
}

inline set64 set_from_json(const json& arr, int universe) {
  require(arr.is_array(), errc::file_format, "expected an array of indices");
  set64 s = 0;
  for (const auto& v : arr) {
    require(v.is_number_integer(), errc::file_format, "set members must be integers");
    int e = v.get<int>();
    require(0 <= e && e < universe, errc::file_format, "set member out of range");
    s = bits::with(s, e);
  }
  return s;
}

inline json family_to_json(const SetFamily& f) {
  json out;
  out["universe"] = f.universe();
  json sets = json::array();
  for (set64 s : f.members()) sets.push_back(set_to_json(s));
  out["sets"] = std::move(sets);
  return out;
}

inline SetFamily family_from_json(const json& j) {
  require(j.contains("universe") && j.contains("sets"), errc::file_format, "set family needs universe and sets");
  int universe = j["universe"].get<int>();
  require(0 <= universe && universe <= 64, errc::file_format, "universe size out of range");
  std::vector<set64> members;
  for (const auto& arr : j["sets"]) members.push_back(set_from_json(arr, universe));
  return SetFamily(universe, std::move(members));
}

inline json matroid_to_json(const Matroid& m) {
  json out;
  out["n"] = m.size();
  json bases = json::array();
  for (set64 b : m.bases()) bases.push_back(set_to_json(b));
  out["bases"] = std::move(bases);
  return out;
}

inline Matroid matroid_from_json(const json& j) {
  if (j.contains("field")) {
    require(j.contains("matrix"), errc::file_format, "matrix matroid needs field and matrix");
    std::vector<std::vector<int>> rows;
    for (const auto& row : j["matrix"]) {
      std::vector<int> r;
      for (const auto& v : row) r.push_back(v.get<int>());
      rows.push_back(std::move(r));
    }
    return Matroid::from_matrix(GFMatrix(j["field"].get<int>(), std::move(rows)));
  }
  require(j.contains("n") && j.contains("bases"), errc::file_format, "matroid needs n and bases");
  int n = j["n"].get<int>();
  require(0 <= n && n <= 64, errc::file_format, "ground set size out of range");
  std::vector<set64> bases;
  for (const auto& arr : j["bases"]) bases.push_back(set_from_json(arr, n));
  return Matroid::from_bases(n, std::move(bases));
}

inline json lattice_to_json(const FiniteLattice& l) {
  json out;
  out["elements"] = l.size();
  json pairs = json::array();
  for (auto [a, b] : l.cover_pairs()) pairs.push_back(json::array({a, b}));
  out["leq_pairs"] = std::move(pairs);
  return out;
}

inline FiniteLattice lattice_from_json(const json& j) {
  require(j.contains("elements") && j.contains("leq_pairs"), errc::file_format,
          "lattice needs elements and leq_pairs");
  int m = j["elements"].get<int>();
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : j["leq_pairs"]) {
    require(p.is_array() && p.size() == 2, errc::file_format, "leq_pairs entries must be index pairs");
    pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  return FiniteLattice::build(m, pairs);
}

inline json report_to_json(const AdjointReport& rep) {
  json out;
  out["count"] = rep.candidates.size();
  json hist = json::object();
  for (const auto& c : rep.candidates) {
    std::string key = std::to_string(c.basis_count);
    hist[key] = hist.contains(key) ? hist[key].get<int>() + 1 : 1;
  }
  out["histogram"] = std::move(hist);
  json classes = json::array();
  for (const auto& [count, sizes] : rep.iso_class_sizes) {
    json entry;
    entry["basis_count"] = count;
    entry["class_sizes"] = sizes;
    classes.push_back(std::move(entry));
  }
  out["classes"] = std::move(classes);
  json minimal = json::array(), maximal = json::array();
  for (std::size_t i = 0; i < rep.candidates.size(); ++i) {
    if (rep.candidates[i].minimal) minimal.push_back(i);
    if (rep.candidates[i].maximal) maximal.push_back(i);
  }
  out["minimal"] = std::move(minimal);
  out["maximal"] = std::move(maximal);
  out["complete"] = rep.complete;
  out["nodes"] = rep.nodes;
  out["seconds"] = rep.seconds;
  return out;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::file_format, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(errc::file_format, "parse error in '" + path + "': " + e.what());
  }
  return j;
}

/// Resolves "catalog:Name" or a JSON file path to a matroid.
inline Matroid resolve_matroid(const std::string& spec) {
  if (spec.rfind("catalog:", 0) == 0) return catalog::by_name(spec.substr(8));
  return matroid_from_json(load_json_file(spec));
}

}  // namespace io
}  // namespace adjointforge

#endif
