#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtop/homology.hpp"
#include "rtop/hom.hpp"
#include "rtop/rset.hpp"
#include "rtop/simplicial.hpp"
#include "rtop/strong_homotopy.hpp"

namespace rtop {

using nlohmann::json;

/// The interchange format: {"r": int, "vertices": [...], "relation": [[...]]}.
/// Unknown keys are rejected.
inline RSet rset_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("r-set document must be an object");
  for (auto& [key, value] : j.items()) {
    if (key != "r" && key != "vertices" && key != "relation")
      throw ValidationError("unknown key in r-set document: " + key);
  }
  if (!j.contains("r") || !j.contains("vertices") || !j.contains("relation"))
    throw ValidationError("r-set document needs keys r, vertices, relation");
  if (!j["r"].is_number_integer())
    throw ValidationError("key 'r' must be an integer");
  int r = j["r"].get<int>();
  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ValidationError("vertices must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::vector<std::string>> relation;
  for (const auto& t : j["relation"]) {
    if (!t.is_array()) throw ValidationError("relation entries must be arrays");
    std::vector<std::string> tup;
    for (const auto& e : t) {
      if (!e.is_string())
        throw ValidationError("relation tuple entries must be strings");
      tup.push_back(e.get<std::string>());
    }
    relation.push_back(std::move(tup));
  }
  return make_rset(r, std::move(vertices), relation);
}

inline json rset_to_json(const RSet& X) {
  json j;
  j["r"] = X.arity();
  j["vertices"] = X.names();
  json rel = json::array();
  for (const Tuple& t : X.tuples()) {
    json tup = json::array();
    for (Vertex v : t) tup.push_back(X.name(v));
    rel.push_back(std::move(tup));
  }
  j["relation"] = std::move(rel);
  return j;
}

inline RSet load_rset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
  return rset_from_json(j);
}

/// Vertex assignment file: a plain object {"x": "image", ...}.
inline RMap rmap_from_json(const json& j, RSet X, RSet Y) {
  if (!j.is_object()) throw ValidationError("map document must be an object");
  std::unordered_map<std::string, std::string> f;
  for (auto& [key, value] : j.items()) {
    if (!value.is_string())
      throw ValidationError("map images must be strings");
    f[key] = value.get<std::string>();
  }
  return make_rmap_named(std::move(X), std::move(Y), f);
}

inline RMap load_rmap(const std::string& path, RSet X, RSet Y) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
  return rmap_from_json(j, std::move(X), std::move(Y));
}

inline json multimap_to_json(const MultiMap& m) {
  json j = json::object();
  for (Vertex v = 0; v < m.dom.size(); ++v) {
    json images = json::array();
    m.values[v].for_each([&](Vertex w) { images.push_back(m.cod.name(w)); });
    j[m.dom.name(v)] = std::move(images);
  }
  return j;
}

/// Poset export: elements plus the strict leq pairs.
inline json hom_poset_to_json(const FinitePoset<MultiMap>& P) {
  json j;
  json elements = json::array();
  for (const MultiMap& m : P.elements) elements.push_back(multimap_to_json(m));
  j["elements"] = std::move(elements);
  json leq = json::array();
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t k = 0; k < P.size(); ++k)
      if (i != k && P.leq(i, k)) leq.push_back(json::array({i, k}));
  j["leq"] = std::move(leq);
  return j;
}

/// Simplicial-set export: per dimension, each simplex as an array of maps.
inline json sing_to_json(const TruncatedSimplicialSet& S) {
  json j;
  j["dim_bound"] = S.dim_bound;
  json dims = json::array();
  for (int n = 0; n <= S.dim_bound; ++n) {
    json level = json::array();
    for (const Tuple& s : S.simplices[n]) {
      json tuple = json::array();
      for (Vertex id : s) {
        json map = json::object();
        for (Vertex t = 0; t < S.domain.size(); ++t)
          map[S.domain.name(t)] = S.target.name(S.vertex_maps[id][t]);
        tuple.push_back(std::move(map));
      }
      level.push_back(std::move(tuple));
    }
    dims.push_back(std::move(level));
  }
  j["simplices"] = std::move(dims);
  return j;
}

inline json complex_to_json(const AbstractSimplicialComplex& K) {
  json j;
  j["vertices"] = K.vertex_names;
  json dims = json::array();
  for (int d = 0; d <= K.dim(); ++d) {
    json level = json::array();
    for (const Tuple& s : K.by_dim[d]) {
      json simplex = json::array();
      for (Vertex v : s) simplex.push_back(K.vertex_names[v]);
      level.push_back(std::move(simplex));
    }
    dims.push_back(std::move(level));
  }
  j["simplices"] = std::move(dims);
  return j;
}

inline std::string homology_degree_to_text(const HomologyDegree& d) {
  std::ostringstream out;
  if (d.betti == 0 && d.torsion.empty()) return "0";
  bool first = true;
  if (d.betti > 0) {
    out << (d.betti == 1 ? "Z" : "Z^" + std::to_string(d.betti));
    first = false;
  }
  for (const BigInt& t : d.torsion) {
    if (!first) out << " ⊕ ";
    out << "Z/" << t.str();
    first = false;
  }
  return out.str();
}

inline std::string homology_to_text(const HomologyResult& H) {
  std::ostringstream out;
  for (std::size_t n = 0; n < H.degrees.size(); ++n)
    out << "H_" << n << " = " << homology_degree_to_text(H.degrees[n]) << "\n";
  return out.str();
}

inline json homology_to_json(const HomologyResult& H) {
  json j;
  json degrees = json::array();
  for (std::size_t n = 0; n < H.degrees.size(); ++n) {
    json d;
    d["degree"] = n;
    d["betti"] = H.degrees[n].betti;
    json tors = json::array();
    for (const BigInt& t : H.degrees[n].torsion) tors.push_back(t.str());
    d["torsion"] = std::move(tors);
    degrees.push_back(std::move(d));
  }
  j["degrees"] = std::move(degrees);
  j["valid_up_to"] = H.valid_up_to;
  return j;
}

/// Core report: the core as an r-set document plus the fold sequence.
inline json core_to_json(const CoreResult& R) {
  json j;
  j["core"] = rset_to_json(R.core);
  json folds = json::array();
  for (const BeatWitness& w : R.folds)
    folds.push_back(json::array({w.point_name, w.witness_name}));
  j["folds"] = std::move(folds);
  return j;
}

}  // namespace rtop
