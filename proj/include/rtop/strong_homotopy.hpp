#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rtop/core.hpp"
#include "rtop/enumerate.hpp"
#include "rtop/hom.hpp"
#include "rtop/rset.hpp"
#include "rtop/simplicial.hpp"

namespace rtop {

/// A beat point with its witness: substituting the witness for the point at
/// any single coordinate of any relation tuple stays inside the relation.
struct BeatWitness {
  Vertex point = 0;
  Vertex witness = 0;
  std::string point_name;
  std::string witness_name;
};

inline bool is_beat_witness(const RSet& X, Vertex x, Vertex y) {
  if (x == y) return false;
  Tuple probe;
  for (auto [tid, pos] : X.occurrences(x)) {
    probe = X.tuples()[tid];
    probe[pos] = y;
    if (!X.has_tuple(probe)) return false;
  }
  return true;
}

/// All beat pairs (x,y), ordered by (point, witness) in declared vertex
/// order. Empty exactly when X is minimal.
inline std::vector<BeatWitness> beat_points(const RSet& X) {
  std::vector<BeatWitness> out;
  for (Vertex x = 0; x < X.size(); ++x)
    for (Vertex y = 0; y < X.size(); ++y)
      if (is_beat_witness(X, x, y))
        out.push_back(BeatWitness{x, y, X.name(x), X.name(y)});
  return out;
}

inline bool is_minimal(const RSet& X) {
  for (Vertex x = 0; x < X.size(); ++x)
    for (Vertex y = 0; y < X.size(); ++y)
      if (is_beat_witness(X, x, y)) return false;
  return true;
}

/// Result of removing one beat point: the induced r-subset, the retraction
/// (point -> witness, rest fixed), the inclusion back, and the connecting
/// multi-map eta with eta(point) = {point, witness}.
struct FoldResult {
  RSet folded;
  RMap retraction;  // X -> folded
  RMap inclusion;   // folded -> X
  MultiMap eta;     // X -> X, >= id and >= inclusion o retraction
};

inline FoldResult fold(const RSet& X, const BeatWitness& w) {
  auto x = X.index_of(w.point_name);
  auto y = X.index_of(w.witness_name);
  if (!x || !y || *x != w.point || *y != w.witness ||
      !is_beat_witness(X, *x, *y))
    throw ValidationError("fold: invalid beat witness");

  Bitset members = Bitset::full(X.size());
  members.reset(*x);
  RSet folded = induced_subset(X, VertexSubset{X, members});

  std::vector<Vertex> down(X.size());
  std::vector<Vertex> up(folded.size());
  for (Vertex v = 0; v < folded.size(); ++v) {
    Vertex orig = *X.index_of(folded.name(v));
    up[v] = orig;
    down[orig] = v;
  }
  down[*x] = down[*y];

  FoldResult R{folded, make_rmap(X, folded, down), make_rmap(folded, X, up),
               MultiMap{}};
  std::vector<Bitset> values;
  values.reserve(X.size());
  for (Vertex v = 0; v < X.size(); ++v) {
    Bitset b(X.size());
    b.set(v);
    if (v == *x) b.set(*y);
    values.push_back(std::move(b));
  }
  R.eta = MultiMap{X, X, std::move(values)};
  if (!is_multimap(R.eta))
    throw ValidationError("fold: connecting multi-map failed validation");
  return R;
}

/// Fold-order policy: lexicographically least beat pair, or a seeded uniform
/// choice per step.
struct FoldPolicy {
  enum Kind { First, Random } kind = First;
  std::uint64_t seed = 0;

  static FoldPolicy first() { return FoldPolicy{First, 0}; }
  static FoldPolicy random(std::uint64_t seed) {
    return FoldPolicy{Random, seed};
  }
};

struct CoreResult {
  RSet core;
  std::vector<BeatWitness> folds;
};

/// Iteratively folds beat points until minimal. The result is an induced
/// r-subset; finite r-sets always reach one.
inline CoreResult core(const RSet& X, FoldPolicy policy = FoldPolicy::first()) {
  CoreResult R{X, {}};
  std::mt19937_64 rng(policy.seed);
  while (true) {
    auto bps = beat_points(R.core);
    if (bps.empty()) break;
    std::size_t pick = 0;
    if (policy.kind == FoldPolicy::Random)
      pick = static_cast<std::size_t>(rng() % bps.size());
    R.folds.push_back(bps[pick]);
    R.core = fold(R.core, bps[pick]).folded;
  }
  return R;
}

// ---------------------------------------------------------------------------
// Strong homotopy of maps

/// A step sequence f = h_0, ..., h_n = g where each consecutive pair spans a
/// clique of Y^X (equivalently, x -> {h_k(x), h_k+1(x)} is a multi-map).
struct HomotopyPath {
  std::vector<RMap> steps;

  std::size_t length() const { return steps.empty() ? 0 : steps.size() - 1; }
};

inline bool maps_interval_compatible(const RMap& f, const RMap& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod)) return false;
  std::vector<Bitset> values;
  values.reserve(f.img.size());
  for (std::size_t v = 0; v < f.img.size(); ++v) {
    Bitset b(f.cod.size());
    b.set(f.img[v]);
    b.set(g.img[v]);
    values.push_back(std::move(b));
  }
  return is_multimap(f.dom, f.cod, values);
}

inline bool validate_path(const HomotopyPath& p) {
  if (p.steps.empty()) return false;
  for (const RMap& h : p.steps)
    if (!is_rmap(h)) return false;
  for (std::size_t k = 0; k + 1 < p.steps.size(); ++k)
    if (!maps_interval_compatible(p.steps[k], p.steps[k + 1])) return false;
  return true;
}

/// The path as an explicit map of r-sets I_n x X -> Y with (k, x) -> h_k(x);
/// construction validates relation preservation.
inline RMap path_as_interval_homotopy(const HomotopyPath& p) {
  if (p.steps.empty())
    throw ValidationError("homotopy path must have at least one step");
  const RSet& X = p.steps[0].dom;
  const RSet& Y = p.steps[0].cod;
  const int n = static_cast<int>(p.steps.size()) - 1;
  auto layout =
      product_with_projections(standard_interval(n, X.arity()), X);
  std::vector<Vertex> img(layout.product.size());
  for (int k = 0; k <= n; ++k)
    for (Vertex v = 0; v < X.size(); ++v)
      img[layout.pair_index(k, v)] = p.steps[k].img[v];
  return make_rmap(layout.product, Y, std::move(img));
}

/// The path as a map I_n -> Y^X with 0 -> f and n -> g.
inline RMap path_as_exponential_map(const HomotopyPath& p,
                                    const Limits& lim = Limits{}) {
  if (p.steps.empty())
    throw ValidationError("homotopy path must have at least one step");
  const RSet& X = p.steps[0].dom;
  const RSet& Y = p.steps[0].cod;
  auto layout = exponential_with_layout(Y, X, lim);
  const int n = static_cast<int>(p.steps.size()) - 1;
  std::vector<Vertex> img(n + 1);
  for (int k = 0; k <= n; ++k) img[k] = layout.encode(p.steps[k].img);
  return make_rmap(standard_interval(n, X.arity()), layout.exp,
                   std::move(img));
}

/// The graph of all r-set maps X -> Y with interval-compatibility edges;
/// connected components classify strong homotopy.
struct MapGraph {
  std::vector<RMap> maps;  // lexicographic by image tuple
  std::vector<std::vector<std::uint32_t>> adj;
  std::vector<int> comp;

  std::size_t index_of(const RMap& f) const {
    auto it = std::lower_bound(
        maps.begin(), maps.end(), f,
        [](const RMap& a, const RMap& b) { return a.img < b.img; });
    if (it == maps.end() || it->img != f.img)
      throw ValidationError("map is not an r-set map of this pair");
    return static_cast<std::size_t>(it - maps.begin());
  }
};

inline MapGraph map_graph(const RSet& X, const RSet& Y,
                          const Limits& lim = Limits{}) {
  MapGraph G;
  G.maps = enumerate_rmaps(X, Y, lim);
  const std::size_t m = G.maps.size();
  G.adj.assign(m, {});
  VisitCounter visits("enumeration visits", lim.max_enumeration_visits);
  UnionFind uf(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      visits.tick();
      if (maps_interval_compatible(G.maps[i], G.maps[j])) {
        G.adj[i].push_back(static_cast<std::uint32_t>(j));
        G.adj[j].push_back(static_cast<std::uint32_t>(i));
        uf.unite(i, j);
      }
    }
  }
  G.comp = uf.labels();
  return G;
}

/// Shortest step sequence between two map-graph nodes, if connected.
inline std::optional<HomotopyPath> path_in_graph(const MapGraph& G,
                                                 std::size_t src,
                                                 std::size_t dst) {
  if (G.comp[src] != G.comp[dst]) return std::nullopt;
  std::vector<std::int64_t> parent(G.maps.size(), -2);
  std::deque<std::size_t> queue{src};
  parent[src] = -1;
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    if (cur == dst) break;
    for (std::uint32_t nxt : G.adj[cur])
      if (parent[nxt] == -2) {
        parent[nxt] = static_cast<std::int64_t>(cur);
        queue.push_back(nxt);
      }
  }
  HomotopyPath path;
  for (std::int64_t at = static_cast<std::int64_t>(dst); at != -1;
       at = parent[at])
    path.steps.push_back(G.maps[at]);
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

enum class HomotopyMethod { HomPoset, Path };

struct HomotopyDecision {
  bool homotopic = false;
  std::optional<HomotopyPath> path;  // populated by the path method
};

/// Connected-component labels of a Hom complex given by its element list.
inline std::vector<int> hom_components(const std::vector<MultiMap>& elements) {
  UnionFind uf(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      if (multimap_leq(elements[i], elements[j]) ||
          multimap_leq(elements[j], elements[i]))
        uf.unite(i, j);
  return uf.labels();
}

/// Decides f ~ g. Method HomPoset places both maps as minimal points of the
/// Hom complex and compares connected components; method Path searches the
/// map graph breadth-first and returns a shortest witness sequence.
inline HomotopyDecision strongly_homotopic_maps(
    const RMap& f, const RMap& g, HomotopyMethod method,
    const Limits& lim = Limits{}) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod))
    throw ValidationError("maps must share domain and codomain");
  if (!is_rmap(f) || !is_rmap(g))
    throw ValidationError("inputs are not maps of r-sets");

  if (method == HomotopyMethod::HomPoset) {
    auto hom = hom_complex(f.dom, f.cod, lim);
    if (hom.size() > lim.max_poset_elements)
      throw GuardError("poset elements", lim.max_poset_elements);
    auto comp = hom_components(hom.elements);
    std::size_t fi = hom.index_of(as_multimap(f));
    std::size_t gi = hom.index_of(as_multimap(g));
    return HomotopyDecision{comp[fi] == comp[gi], std::nullopt};
  }

  MapGraph G = map_graph(f.dom, f.cod, lim);
  auto path = path_in_graph(G, G.index_of(f), G.index_of(g));
  if (!path) return HomotopyDecision{false, std::nullopt};
  return HomotopyDecision{true, std::move(path)};
}

/// True iff some g: Y -> X composes with f into the identity components both
/// ways. Candidate inverses are enumerated exhaustively.
inline bool is_strong_homotopy_equivalence(const RMap& f,
                                           const Limits& lim = Limits{}) {
  const RSet& X = f.dom;
  const RSet& Y = f.cod;
  if (!is_rmap(f)) throw ValidationError("input is not a map of r-sets");
  MapGraph GX = map_graph(X, X, lim);
  MapGraph GY = map_graph(Y, Y, lim);
  int idx = GX.comp[GX.index_of(identity_rmap(X))];
  int idy = GY.comp[GY.index_of(identity_rmap(Y))];
  for (const RMap& g : enumerate_rmaps(Y, X, lim)) {
    if (GX.comp[GX.index_of(compose(g, f))] == idx &&
        GY.comp[GY.index_of(compose(f, g))] == idy)
      return true;
  }
  return false;
}

/// Strong homotopy equivalence of finite r-sets: cores are isomorphic.
inline bool strong_equivalent_rsets(const RSet& X, const RSet& Y,
                                    const Limits& lim = Limits{}) {
  CoreResult cx = core(X);
  CoreResult cy = core(Y);
  return find_isomorphism(cx.core, cy.core, lim).has_value();
}

// ---------------------------------------------------------------------------
// Independent beat-point oracles for the classical specializations

inline void check_preorder(const RSet& P) {
  if (P.arity() != 2) throw ValidationError("preorder oracle needs a 2-set");
  for (Vertex v = 0; v < P.size(); ++v)
    if (!P.has_tuple({v, v}))
      throw ValidationError("preorder oracle: relation is not reflexive");
  for (const Tuple& t : P.tuples())
    for (Vertex c = 0; c < P.size(); ++c)
      if (P.has_tuple({t[1], c}) && !P.has_tuple({t[0], c}))
        throw ValidationError("preorder oracle: relation is not transitive");
}

/// Upper/lower beat points in the order-theoretic sense: the points strictly
/// above x have a minimum, or the points strictly below have a maximum.
inline bool oracle_poset_beat(const RSet& P, Vertex x) {
  check_preorder(P);
  auto leq = [&](Vertex a, Vertex b) { return P.has_tuple({a, b}); };
  std::vector<Vertex> up, down;
  for (Vertex v = 0; v < P.size(); ++v) {
    if (v == x) continue;
    if (leq(x, v)) up.push_back(v);
    if (leq(v, x)) down.push_back(v);
  }
  auto has_minimum = [&](const std::vector<Vertex>& s) {
    for (Vertex m : s) {
      bool ok = true;
      for (Vertex z : s) ok = ok && leq(m, z);
      if (ok) return true;
    }
    return false;
  };
  auto has_maximum = [&](const std::vector<Vertex>& s) {
    for (Vertex m : s) {
      bool ok = true;
      for (Vertex z : s) ok = ok && leq(z, m);
      if (ok) return true;
    }
    return false;
  };
  return (!up.empty() && has_minimum(up)) ||
         (!down.empty() && has_maximum(down));
}

/// The characterization that actually matches the single-coordinate beat
/// condition on preorder 2-sets: x has an equivalent duplicate.
inline bool oracle_poset_duplicate(const RSet& P, Vertex x) {
  check_preorder(P);
  for (Vertex y = 0; y < P.size(); ++y)
    if (y != x && P.has_tuple({x, y}) && P.has_tuple({y, x})) return true;
  return false;
}

/// Vertex domination: some other vertex w lies in every simplex alongside v
/// (sigma + w is a simplex whenever sigma contains v).
inline bool oracle_complex_dominated(const AbstractSimplicialComplex& K,
                                     Vertex v, int r) {
  if (r <= K.dim())
    throw ValidationError("domination oracle needs r > dim");
  if (!K.contains({v}))
    throw ValidationError("domination oracle: vertex not in the complex");
  for (Vertex w = 0; w < K.vertex_names.size(); ++w) {
    if (w == v || !K.contains({w})) continue;
    bool dominates = true;
    for (int d = 0; d <= K.dim() && dominates; ++d) {
      for (const Tuple& s : K.by_dim[d]) {
        if (!std::binary_search(s.begin(), s.end(), v)) continue;
        Tuple ext = s;
        auto it = std::lower_bound(ext.begin(), ext.end(), w);
        if (it == ext.end() || *it != w) ext.insert(it, w);
        if (!K.contains(ext)) {
          dominates = false;
          break;
        }
      }
    }
    if (dominates) return true;
  }
  return false;
}

}  // namespace rtop
