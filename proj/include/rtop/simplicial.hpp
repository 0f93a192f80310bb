#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rtop/core.hpp"
#include "rtop/enumerate.hpp"
#include "rtop/hom.hpp"
#include "rtop/poset.hpp"
#include "rtop/rset.hpp"

namespace rtop {

/// Finite abstract simplicial complex over an ordered vertex list. Simplices
/// are sorted index vectors, closed under nonempty subsets, grouped by
/// dimension and lexicographically ordered within each dimension.
struct AbstractSimplicialComplex {
  std::vector<std::string> vertex_names;
  std::vector<std::vector<Tuple>> by_dim;

  int dim() const { return static_cast<int>(by_dim.size()) - 1; }

  std::size_t count(int d) const {
    if (d < 0 || d > dim()) return 0;
    return by_dim[d].size();
  }

  std::size_t simplex_count() const {
    std::size_t c = 0;
    for (const auto& v : by_dim) c += v.size();
    return c;
  }

  bool contains(const Tuple& sorted_simplex) const {
    int d = static_cast<int>(sorted_simplex.size()) - 1;
    if (d < 0 || d > dim()) return false;
    const auto& level = by_dim[d];
    auto it = std::lower_bound(level.begin(), level.end(), sorted_simplex);
    return it != level.end() && *it == sorted_simplex;
  }
};

namespace detail {

inline void finalize_complex(AbstractSimplicialComplex& K,
                             std::vector<Tuple> simplices) {
  std::sort(simplices.begin(), simplices.end(), [](const Tuple& a, const Tuple& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  simplices.erase(std::unique(simplices.begin(), simplices.end()),
                  simplices.end());
  K.by_dim.clear();
  for (auto& s : simplices) {
    std::size_t d = s.size() - 1;
    if (K.by_dim.size() <= d) K.by_dim.resize(d + 1);
    K.by_dim[d].push_back(std::move(s));
  }
}

}  // namespace detail

/// Builds the downward closure of the given faces.
inline AbstractSimplicialComplex complex_from_faces(
    std::vector<std::string> vertex_names, const std::vector<Tuple>& faces) {
  const std::size_t n = vertex_names.size();
  std::unordered_set<Tuple, TupleHash> seen;
  std::vector<Tuple> all;
  for (const Tuple& f : faces) {
    Tuple s = f;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (Vertex v : s)
      if (v >= n) throw ValidationError("simplex vertex out of range");
    if (s.empty() || s.size() > 63)
      throw ValidationError("simplex must have 1..63 vertices");
    for (std::uint64_t mask = 1; mask < (1ULL << s.size()); ++mask) {
      Tuple sub;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (mask & (1ULL << i)) sub.push_back(s[i]);
      if (seen.insert(sub).second) all.push_back(std::move(sub));
    }
  }
  AbstractSimplicialComplex K{std::move(vertex_names), {}};
  detail::finalize_complex(K, std::move(all));
  return K;
}

namespace detail {

/// All nonempty subsets A of {0..m-1} (up to max_size) such that every
/// r-tuple over A passes tuple_ok. Depth-first in ascending vertex order with
/// a pairwise-compatibility prefilter.
template <class TupleOk>
std::vector<Tuple> enumerate_r_cliques(std::size_t m, int r, TupleOk&& tuple_ok,
                                       std::size_t max_size,
                                       VisitCounter& visits) {
  std::vector<Tuple> cliques;
  if (m == 0 || max_size == 0) return cliques;

  Tuple t(r);
  auto diag_ok = [&](Vertex v) {
    std::fill(t.begin(), t.end(), v);
    return tuple_ok(t);
  };
  // every tuple over {u,v} that mentions both
  auto pair_ok = [&](Vertex u, Vertex v) {
    for (std::uint32_t mask = 1; mask + 1 < (1u << r); ++mask) {
      for (int i = 0; i < r; ++i) t[i] = (mask & (1u << i)) ? u : v;
      if (!tuple_ok(t)) return false;
    }
    return true;
  };

  std::vector<Bitset> compat(m, Bitset(m));
  Bitset alive(m);
  std::vector<Vertex> alive_list;
  for (Vertex v = 0; v < m; ++v) {
    visits.tick();
    if (diag_ok(v)) {
      alive.set(v);
      alive_list.push_back(v);
    }
  }
  for (std::size_t a = 0; a < alive_list.size(); ++a) {
    for (std::size_t b = a + 1; b < alive_list.size(); ++b) {
      visits.tick();
      if (pair_ok(alive_list[a], alive_list[b])) {
        compat[alive_list[a]].set(alive_list[b]);
        compat[alive_list[b]].set(alive_list[a]);
      }
    }
  }

  // Full r-ary test for A + v, assuming A is a clique: every tuple over
  // A + v that mentions v.
  auto extension_ok = [&](const Tuple& A, Vertex v) {
    if (r == 2) return true;  // pairwise prefilter is already complete
    std::vector<Vertex> pool(A);
    pool.push_back(v);
    const std::size_t c = pool.size();
    std::vector<std::size_t> digits(r, 0);
    while (true) {
      bool mentions = false;
      for (int i = 0; i < r; ++i) {
        t[i] = pool[digits[i]];
        mentions |= digits[i] + 1 == c;
      }
      if (mentions && !tuple_ok(t)) return false;
      int k = r - 1;
      while (k >= 0 && digits[k] + 1 == c) digits[k--] = 0;
      if (k < 0) break;
      ++digits[k];
    }
    return true;
  };

  Tuple current;
  Bitset candidates(m);
  auto dfs = [&](auto&& self, const Bitset& cand) -> void {
    Vertex from = current.empty() ? 0 : current.back() + 1;
    for (Vertex v = from; v < m; ++v) {
      if (current.empty() ? !alive.test(v) : !cand.test(v)) continue;
      visits.tick();
      if (!current.empty() && !extension_ok(current, v)) continue;
      current.push_back(v);
      cliques.push_back(current);
      if (current.size() < max_size) {
        Bitset next = current.size() == 1 ? compat[v] : cand;
        if (current.size() > 1) next &= compat[v];
        self(self, next);
      }
      current.pop_back();
    }
  };
  dfs(dfs, candidates);
  return cliques;
}

}  // namespace detail

/// Clique complex Cl(X): simplices are the nonempty cliques, i.e. subsets A
/// with A^r inside the relation. A singleton {v} needs the diagonal tuple.
inline AbstractSimplicialComplex clique_complex(const RSet& X,
                                                const Limits& lim = Limits{}) {
  VisitCounter visits("enumeration visits", lim.max_enumeration_visits);
  auto tuple_ok = [&](const Tuple& t) { return X.has_tuple(t); };
  auto cliques = detail::enumerate_r_cliques(X.size(), X.arity(), tuple_ok,
                                             X.size(), visits);
  AbstractSimplicialComplex K{X.names(), {}};
  detail::finalize_complex(K, std::move(cliques));
  return K;
}

/// Example-4.6(2)-style encoding: a finite complex as an r-set for r > dim.
/// Tuples are exactly the r-tuples whose support is a simplex.
inline RSet complex_to_rset(const AbstractSimplicialComplex& K, int r) {
  if (r <= K.dim())
    throw ValidationError("complex encoding needs r > dim");
  const std::size_t n = K.vertex_names.size();
  std::vector<Tuple> tuples;
  if (n > 0) {
    Tuple t(r, 0);
    Tuple support;
    while (true) {
      support = t;
      std::sort(support.begin(), support.end());
      support.erase(std::unique(support.begin(), support.end()),
                    support.end());
      if (K.contains(support)) tuples.push_back(t);
      int k = r - 1;
      while (k >= 0 && t[k] + 1 == n) t[k--] = 0;
      if (k < 0) break;
      ++t[k];
    }
  }
  return RSet::from_indexed(r, K.vertex_names, std::move(tuples));
}

// ---------------------------------------------------------------------------
// Truncated singular simplicial sets

/// Sing(T,X) up to a dimension bound. An n-simplex is an (n+1)-tuple of
/// vertex ids whose underlying set is a clique in the exponential X^T; the
/// vertices are the r-set maps T -> X. Face maps delete an entry, degeneracy
/// maps duplicate one.
struct TruncatedSimplicialSet {
  int dim_bound = -1;
  RSet domain;  // T (empty handle for derived sets such as products)
  RSet target;  // X
  std::vector<std::vector<Vertex>> vertex_maps;  // assignment per vertex id
  std::vector<std::string> vertex_labels;
  std::vector<std::vector<Tuple>> simplices;  // per dim, lex sorted

  std::size_t count(int n) const {
    if (n < 0 || n > dim_bound) return 0;
    return simplices[n].size();
  }

  std::size_t total_count() const {
    std::size_t c = 0;
    for (const auto& v : simplices) c += v.size();
    return c;
  }

  bool is_simplex(const Tuple& s) const {
    int n = static_cast<int>(s.size()) - 1;
    if (n < 0 || n > dim_bound) return false;
    const auto& level = simplices[n];
    auto it = std::lower_bound(level.begin(), level.end(), s);
    return it != level.end() && *it == s;
  }

  std::size_t index_of(const Tuple& s) const {
    int n = static_cast<int>(s.size()) - 1;
    const auto& level = simplices[n];
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s)
      throw ValidationError("tuple is not a stored simplex");
    return static_cast<std::size_t>(it - level.begin());
  }

  /// Vertex id of an assignment (maps are stored in lexicographic order).
  Vertex map_index(const std::vector<Vertex>& img) const {
    auto it = std::lower_bound(vertex_maps.begin(), vertex_maps.end(), img);
    if (it == vertex_maps.end() || *it != img)
      throw ValidationError("assignment is not a vertex of this complex");
    return static_cast<Vertex>(it - vertex_maps.begin());
  }
};

/// d_i: delete entry i.
inline Tuple face(const Tuple& s, int i) {
  if (s.size() < 2) throw ValidationError("face: simplex has dimension 0");
  if (i < 0 || static_cast<std::size_t>(i) >= s.size())
    throw ValidationError("face: index out of range");
  Tuple out;
  out.reserve(s.size() - 1);
  for (std::size_t k = 0; k < s.size(); ++k)
    if (static_cast<int>(k) != i) out.push_back(s[k]);
  return out;
}

/// s_i: duplicate entry i.
inline Tuple degeneracy(const Tuple& s, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= s.size())
    throw ValidationError("degeneracy: index out of range");
  Tuple out;
  out.reserve(s.size() + 1);
  for (std::size_t k = 0; k < s.size(); ++k) {
    out.push_back(s[k]);
    if (static_cast<int>(k) == i) out.push_back(s[k]);
  }
  return out;
}

/// Degeneracy inside a truncated set; rejects results past the bound.
inline Tuple degeneracy_in(const TruncatedSimplicialSet& S, const Tuple& s,
                           int i) {
  if (static_cast<int>(s.size()) > S.dim_bound)
    throw ValidationError("degeneracy: dimension bound exceeded");
  return degeneracy(s, i);
}

inline bool is_degenerate(const Tuple& s) {
  for (std::size_t k = 1; k < s.size(); ++k)
    if (s[k] == s[k - 1]) return true;
  return false;
}

/// Builds Sing(T,X) truncated at N. The vertices are the r-set maps T -> X
/// in enumeration order; a tuple is a simplex iff its support is a clique of
/// X^T, checked directly against R(T) and R(X) without materializing the
/// exponential.
inline TruncatedSimplicialSet sing_truncated(const RSet& T, const RSet& X,
                                             int N,
                                             const Limits& lim = Limits{}) {
  if (N < 0) throw ValidationError("sing: dimension bound must be >= 0");
  VisitCounter visits("enumeration visits", lim.max_enumeration_visits);
  auto maps = enumerate_rmaps(T, X, lim);
  const std::size_t m = maps.size();
  const int r = X.arity();

  Tuple image(r);
  auto tuple_ok = [&](const Tuple& ids) {
    for (const Tuple& t : T.tuples()) {
      for (int i = 0; i < r; ++i) image[i] = maps[ids[i]].img[t[i]];
      if (!X.has_tuple(image)) return false;
    }
    return true;
  };
  auto cliques = detail::enumerate_r_cliques(
      m, r, tuple_ok, static_cast<std::size_t>(N) + 1, visits);
  std::unordered_set<Tuple, TupleHash> family(cliques.begin(), cliques.end());

  TruncatedSimplicialSet S;
  S.dim_bound = N;
  S.domain = T;
  S.target = X;
  S.vertex_maps.reserve(m);
  for (const auto& f : maps) S.vertex_maps.push_back(f.img);
  S.vertex_labels.reserve(m);
  for (const auto& f : maps)
    S.vertex_labels.push_back(exp_vertex_name(X, f.img));
  S.simplices.assign(N + 1, {});

  for (Vertex v = 0; v < m; ++v) S.simplices[0].push_back({v});
  Tuple support;
  for (int n = 0; n < N; ++n) {
    const auto& level = S.simplices[n];
    auto& next = S.simplices[n + 1];
    for (const Tuple& s : level) {
      support.assign(s.begin(), s.end());
      std::sort(support.begin(), support.end());
      support.erase(std::unique(support.begin(), support.end()),
                    support.end());
      for (Vertex v = 0; v < m; ++v) {
        visits.tick();
        Tuple sup2 = support;
        auto it = std::lower_bound(sup2.begin(), sup2.end(), v);
        if (it == sup2.end() || *it != v) sup2.insert(it, v);
        if (sup2.size() == support.size() || family.count(sup2)) {
          Tuple ext = s;
          ext.push_back(v);
          next.push_back(std::move(ext));
        }
      }
    }
  }
  return S;
}

/// Composition of same-dimension simplices: entrywise composition of the
/// underlying maps. The middle r-set of the two singular complexes must
/// match.
inline Tuple compose_simplices(const TruncatedSimplicialSet& SYZ,
                               const Tuple& tau,
                               const TruncatedSimplicialSet& SXY,
                               const Tuple& sigma,
                               const TruncatedSimplicialSet& SXZ) {
  if (tau.size() != sigma.size())
    throw ValidationError("compose_simplices: dimension mismatch");
  if (!(SXY.target == SYZ.domain))
    throw ValidationError("compose_simplices: middle r-set mismatch");
  if (!SYZ.is_simplex(tau) || !SXY.is_simplex(sigma))
    throw ValidationError("compose_simplices: inputs are not stored simplices");
  Tuple out;
  out.reserve(sigma.size());
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    const auto& f = SXY.vertex_maps[sigma[k]];
    const auto& g = SYZ.vertex_maps[tau[k]];
    std::vector<Vertex> comp(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) comp[v] = g[f[v]];
    out.push_back(SXZ.map_index(comp));
  }
  if (!SXZ.is_simplex(out))
    throw ValidationError("compose_simplices: result is not a stored simplex");
  return out;
}

/// Dimension-wise product of two truncated simplicial sets (same bound).
/// Vertices are pairs, encoded first-major.
inline TruncatedSimplicialSet product_sing(const TruncatedSimplicialSet& A,
                                           const TruncatedSimplicialSet& B,
                                           const Limits& lim = Limits{}) {
  if (A.dim_bound != B.dim_bound)
    throw ValidationError("product_sing: dimension bounds differ");
  VisitCounter visits("enumeration visits", lim.max_enumeration_visits);
  TruncatedSimplicialSet P;
  P.dim_bound = A.dim_bound;
  const std::size_t bc = B.vertex_labels.size();
  P.vertex_labels.reserve(A.vertex_labels.size() * bc);
  for (const auto& la : A.vertex_labels)
    for (const auto& lb : B.vertex_labels)
      P.vertex_labels.push_back("(" + la + "," + lb + ")");
  P.simplices.assign(P.dim_bound + 1, {});
  for (int n = 0; n <= P.dim_bound; ++n) {
    auto& out = P.simplices[n];
    out.reserve(A.count(n) * B.count(n));
    for (const Tuple& s : A.simplices[n]) {
      for (const Tuple& t : B.simplices[n]) {
        visits.tick();
        Tuple z(s.size());
        for (std::size_t k = 0; k < s.size(); ++k)
          z[k] = static_cast<Vertex>(s[k] * bc + t[k]);
        out.push_back(std::move(z));
      }
    }
    std::sort(out.begin(), out.end());
  }
  return P;
}

// ---------------------------------------------------------------------------
// Face poset and the comparison isomorphisms

/// Face poset of a complex: simplices ordered by inclusion.
inline FinitePoset<Tuple> face_poset(const AbstractSimplicialComplex& K,
                                     const Limits& lim = Limits{}) {
  std::vector<Tuple> elements;
  elements.reserve(K.simplex_count());
  for (const auto& level : K.by_dim)
    for (const auto& s : level) elements.push_back(s);
  auto subset = [](const Tuple& a, const Tuple& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  return make_poset(std::move(elements), subset, lim);
}

/// The identification of Hom(Sigma_0, X) with the face poset of Cl(X):
/// eta maps to eta(0).
struct FacePosetIdentification {
  HomComplex hom;                 // Hom(Sigma_0, X)
  AbstractSimplicialComplex cl;   // Cl(X)
  FinitePoset<Tuple> fp;          // face poset of Cl(X)
  PosetMap fwd;                   // hom element -> face poset element
  bool is_order_isomorphism = false;
};

inline FacePosetIdentification face_poset_identification(
    const RSet& X, const Limits& lim = Limits{}) {
  FacePosetIdentification R;
  R.hom = hom_complex(standard_sigma(0, X.arity()), X, lim);
  R.cl = clique_complex(X, lim);
  R.fp = face_poset(R.cl, lim);

  std::unordered_map<Tuple, std::size_t, TupleHash> fp_index;
  for (std::size_t i = 0; i < R.fp.size(); ++i)
    fp_index.emplace(R.fp.elements[i], i);

  R.fwd.resize(R.hom.size());
  std::vector<bool> hit(R.fp.size(), false);
  bool ok = R.hom.size() == R.fp.size();
  for (std::size_t i = 0; i < R.hom.size() && ok; ++i) {
    Tuple s;
    R.hom.elements[i].values[0].for_each(
        [&](Vertex v) { s.push_back(v); });
    auto it = fp_index.find(s);
    if (it == fp_index.end()) {
      ok = false;
      break;
    }
    R.fwd[i] = it->second;
    if (hit[it->second]) ok = false;
    hit[it->second] = true;
  }
  if (ok) {
    for (std::size_t i = 0; i < R.hom.size() && ok; ++i)
      for (std::size_t j = 0; j < R.hom.size() && ok; ++j) {
        bool a = multimap_leq(R.hom.elements[i], R.hom.elements[j]);
        bool b = R.fp.leq(R.fwd[i], R.fwd[j]);
        if (a != b) ok = false;
      }
  }
  R.is_order_isomorphism = ok;
  return R;
}

/// Entrywise simplicial-set map induced by a vertex bijection, verified to
/// be a dimension-wise bijection commuting with faces and degeneracies.
struct SimplicialSetIso {
  std::vector<Vertex> vertex_map;
  bool ok = false;
  std::string detail;
};

inline SimplicialSetIso check_simplicial_bijection(
    const TruncatedSimplicialSet& A, const TruncatedSimplicialSet& B,
    std::vector<Vertex> vertex_map) {
  SimplicialSetIso R{std::move(vertex_map), true, ""};
  auto fail = [&](std::string why) {
    R.ok = false;
    R.detail = std::move(why);
  };
  {
    std::vector<bool> used(B.vertex_labels.size(), false);
    for (Vertex v : R.vertex_map) {
      if (v >= used.size() || used[v]) {
        fail("vertex map is not injective");
        return R;
      }
      used[v] = true;
    }
    if (R.vertex_map.size() != B.vertex_labels.size()) {
      fail("vertex counts differ");
      return R;
    }
  }
  auto apply = [&](const Tuple& s) {
    Tuple out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = R.vertex_map[s[k]];
    return out;
  };
  for (int n = 0; n <= std::min(A.dim_bound, B.dim_bound); ++n) {
    if (A.count(n) != B.count(n)) {
      fail("simplex counts differ in dimension " + std::to_string(n));
      return R;
    }
    for (const Tuple& s : A.simplices[n]) {
      Tuple t = apply(s);
      if (!B.is_simplex(t)) {
        fail("image of a simplex is missing in dimension " +
             std::to_string(n));
        return R;
      }
      for (int i = 0; i <= n; ++i) {
        if (n >= 1 && apply(face(s, i)) != face(t, i)) {
          fail("face map does not commute");
          return R;
        }
        if (n + 1 <= A.dim_bound && apply(degeneracy(s, i)) != degeneracy(t, i)) {
          fail("degeneracy map does not commute");
          return R;
        }
        if (n + 1 <= A.dim_bound && !B.is_simplex(degeneracy(t, i))) {
          fail("degenerate image is missing");
          return R;
        }
      }
    }
  }
  return R;
}

/// Sing(X, YxZ) vs Sing(X,Y) x Sing(X,Z).
struct SingProductIso {
  ProductLayout yz;
  TruncatedSimplicialSet lhs;
  TruncatedSimplicialSet sy;
  TruncatedSimplicialSet sz;
  TruncatedSimplicialSet rhs;
  SimplicialSetIso iso;
};

inline SingProductIso product_iso(const RSet& X, const RSet& Y, const RSet& Z,
                                  int N, const Limits& lim = Limits{}) {
  SingProductIso R{product_with_projections(Y, Z), {}, {}, {}, {}, {}};
  R.lhs = sing_truncated(X, R.yz.product, N, lim);
  R.sy = sing_truncated(X, Y, N, lim);
  R.sz = sing_truncated(X, Z, N, lim);
  R.rhs = product_sing(R.sy, R.sz, lim);

  const std::size_t zc = Z.size();
  std::vector<Vertex> vmap(R.lhs.vertex_maps.size());
  for (Vertex v = 0; v < vmap.size(); ++v) {
    const auto& img = R.lhs.vertex_maps[v];
    std::vector<Vertex> yimg(img.size()), zimg(img.size());
    for (std::size_t k = 0; k < img.size(); ++k) {
      yimg[k] = static_cast<Vertex>(img[k] / zc);
      zimg[k] = static_cast<Vertex>(img[k] % zc);
    }
    Vertex iy = R.sy.map_index(yimg);
    Vertex iz = R.sz.map_index(zimg);
    vmap[v] = static_cast<Vertex>(iy * R.sz.vertex_maps.size() + iz);
  }
  R.iso = check_simplicial_bijection(R.lhs, R.rhs, std::move(vmap));
  return R;
}

/// Sing(XxY, Z) vs Sing(X, Z^Y) along the currying bijection.
struct SingCurryIso {
  ProductLayout xy;
  ExpLayout zy;
  TruncatedSimplicialSet lhs;
  TruncatedSimplicialSet rhs;
  SimplicialSetIso iso;
};

inline SingCurryIso curry_iso(const RSet& X, const RSet& Y, const RSet& Z,
                              int N, const Limits& lim = Limits{}) {
  SingCurryIso R{product_with_projections(X, Y),
                 exponential_with_layout(Z, Y, lim),
                 {},
                 {},
                 {}};
  R.lhs = sing_truncated(R.xy.product, Z, N, lim);
  R.rhs = sing_truncated(X, R.zy.exp, N, lim);

  std::vector<Vertex> vmap(R.lhs.vertex_maps.size());
  for (Vertex v = 0; v < vmap.size(); ++v) {
    const auto& img = R.lhs.vertex_maps[v];  // over V(XxY)
    std::vector<Vertex> curried(X.size());
    std::vector<Vertex> partial(Y.size());
    for (Vertex x = 0; x < X.size(); ++x) {
      for (Vertex y = 0; y < Y.size(); ++y)
        partial[y] = img[R.xy.pair_index(x, y)];
      curried[x] = R.zy.encode(partial);
    }
    vmap[v] = R.rhs.map_index(curried);
  }
  R.iso = check_simplicial_bijection(R.lhs, R.rhs, std::move(vmap));
  return R;
}

}  // namespace rtop
