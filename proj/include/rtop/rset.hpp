#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rtop/core.hpp"

namespace rtop {

using Vertex = std::uint32_t;
using Tuple = std::vector<Vertex>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const {
    return static_cast<std::size_t>(hash_span(t.data(), t.size()));
  }
};

/// A finite r-set: an ordered vertex list with an r-ary relation stored as a
/// sorted duplicate-free set of index tuples. Values are immutable and cheap
/// to copy (shared internals).
class RSet {
 public:
  RSet() : d_(empty_data()) {}

  int arity() const { return d_->arity; }
  std::size_t size() const { return d_->names.size(); }
  const std::vector<std::string>& names() const { return d_->names; }
  const std::string& name(Vertex v) const { return d_->names[v]; }

  std::optional<Vertex> index_of(const std::string& name) const {
    auto it = d_->index.find(name);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<Tuple>& tuples() const { return d_->tuples; }
  std::size_t tuple_count() const { return d_->tuples.size(); }

  bool has_tuple(const Tuple& t) const { return d_->membership.count(t) > 0; }

  /// Vertices w such that (prefix..., w) is a relation tuple. The prefix must
  /// have arity-1 entries. Null when no tuple extends the prefix.
  const Bitset* last_allowed(const Tuple& prefix) const {
    auto it = d_->last_allowed.find(prefix);
    if (it == d_->last_allowed.end()) return nullptr;
    return &it->second;
  }

  /// Occurrences of v in the relation as (tuple id, position) pairs.
  const std::vector<std::pair<std::uint32_t, std::uint8_t>>& occurrences(
      Vertex v) const {
    return d_->occurrences[v];
  }

  bool has_loop(Vertex v) const { return d_->has_loop.test(v); }
  const Bitset& loops() const { return d_->has_loop; }

  friend bool operator==(const RSet& a, const RSet& b) {
    if (a.d_ == b.d_) return true;
    return a.d_->arity == b.d_->arity && a.d_->names == b.d_->names &&
           a.d_->tuples == b.d_->tuples;
  }
  friend bool operator!=(const RSet& a, const RSet& b) { return !(a == b); }

  bool same_object(const RSet& o) const { return d_ == o.d_; }

  static RSet from_indexed(int arity, std::vector<std::string> names,
                           std::vector<Tuple> tuples);

 private:
  struct Data {
    int arity = 1;
    std::vector<std::string> names;
    std::unordered_map<std::string, Vertex> index;
    std::vector<Tuple> tuples;
    std::unordered_set<Tuple, TupleHash> membership;
    std::unordered_map<Tuple, Bitset, TupleHash> last_allowed;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>> occurrences;
    Bitset has_loop;
  };

  static std::shared_ptr<const Data> empty_data() {
    static const std::shared_ptr<const Data> e = [] {
      auto d = std::make_shared<Data>();
      d->has_loop = Bitset(0);
      return d;
    }();
    return e;
  }

  explicit RSet(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

inline RSet RSet::from_indexed(int arity, std::vector<std::string> names,
                               std::vector<Tuple> tuples) {
  if (arity < 1) throw ValidationError("arity must be >= 1");
  auto d = std::make_shared<Data>();
  d->arity = arity;
  d->names = std::move(names);
  for (Vertex i = 0; i < d->names.size(); ++i) {
    if (!d->index.emplace(d->names[i], i).second)
      throw ValidationError("duplicate vertex name: " + d->names[i]);
  }
  const std::size_t n = d->names.size();
  for (auto& t : tuples) {
    if (t.size() != static_cast<std::size_t>(arity))
      throw ValidationError("relation tuple has " + std::to_string(t.size()) +
                            " entries, expected arity " + std::to_string(arity));
    for (Vertex v : t)
      if (v >= n) throw ValidationError("relation tuple entry out of range");
  }
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  d->tuples = std::move(tuples);
  d->membership.reserve(d->tuples.size() * 2);
  d->occurrences.resize(n);
  d->has_loop = Bitset(n);
  for (std::uint32_t tid = 0; tid < d->tuples.size(); ++tid) {
    const Tuple& t = d->tuples[tid];
    d->membership.insert(t);
    for (std::uint8_t pos = 0; pos < t.size(); ++pos)
      d->occurrences[t[pos]].emplace_back(tid, pos);
    Tuple prefix(t.begin(), t.end() - 1);
    auto [it, fresh] = d->last_allowed.try_emplace(std::move(prefix), Bitset(n));
    it->second.set(t.back());
    bool diag = true;
    for (Vertex v : t) diag = diag && (v == t[0]);
    if (diag) d->has_loop.set(t[0]);
  }
  return RSet(std::move(d));
}

/// Validating constructor from vertex/tuple names. Duplicate tuples collapse.
inline RSet make_rset(int arity, std::vector<std::string> vertices,
                      const std::vector<std::vector<std::string>>& relation) {
  std::unordered_map<std::string, Vertex> idx;
  for (Vertex i = 0; i < vertices.size(); ++i) {
    if (!idx.emplace(vertices[i], i).second)
      throw ValidationError("duplicate vertex name: " + vertices[i]);
  }
  std::vector<Tuple> tuples;
  tuples.reserve(relation.size());
  for (const auto& named : relation) {
    Tuple t;
    t.reserve(named.size());
    for (const auto& s : named) {
      auto it = idx.find(s);
      if (it == idx.end())
        throw ValidationError("relation tuple entry '" + s +
                              "' is not a declared vertex");
      t.push_back(it->second);
    }
    tuples.push_back(std::move(t));
  }
  return RSet::from_indexed(arity, std::move(vertices), std::move(tuples));
}

/// A map of r-sets: a total vertex assignment carrying the relation into the
/// codomain relation. Construction validates totality/range, not
/// relation-preservation; see is_rmap / make_rmap.
struct RMap {
  RSet dom;
  RSet cod;
  std::vector<Vertex> img;

  Vertex operator()(Vertex v) const { return img[v]; }

  friend bool operator==(const RMap& a, const RMap& b) {
    return a.img == b.img && a.dom == b.dom && a.cod == b.cod;
  }
};

inline void check_assignment(const RSet& X, const RSet& Y,
                             const std::vector<Vertex>& img) {
  if (img.size() != X.size())
    throw ValidationError("assignment is not total on the domain");
  for (Vertex v : img)
    if (v >= Y.size())
      throw ValidationError("assignment hits an undeclared codomain vertex");
}

inline bool is_rmap(const RSet& X, const RSet& Y,
                    const std::vector<Vertex>& img) {
  if (X.arity() != Y.arity()) return false;
  check_assignment(X, Y, img);
  Tuple image(X.arity());
  for (const Tuple& t : X.tuples()) {
    for (std::size_t i = 0; i < t.size(); ++i) image[i] = img[t[i]];
    if (!Y.has_tuple(image)) return false;
  }
  return true;
}

inline bool is_rmap(const RMap& f) { return is_rmap(f.dom, f.cod, f.img); }

inline RMap make_rmap(RSet X, RSet Y, std::vector<Vertex> img) {
  if (!is_rmap(X, Y, img))
    throw ValidationError("assignment does not preserve the relation");
  return RMap{std::move(X), std::move(Y), std::move(img)};
}

/// Name-keyed variant, for file input.
inline RMap make_rmap_named(
    RSet X, RSet Y, const std::unordered_map<std::string, std::string>& f) {
  std::vector<Vertex> img(X.size());
  for (Vertex v = 0; v < X.size(); ++v) {
    auto it = f.find(X.name(v));
    if (it == f.end())
      throw ValidationError("assignment missing vertex '" + X.name(v) + "'");
    auto w = Y.index_of(it->second);
    if (!w)
      throw ValidationError("assignment image '" + it->second +
                            "' is not a codomain vertex");
    img[v] = *w;
  }
  if (f.size() != X.size())
    throw ValidationError("assignment mentions undeclared vertices");
  return make_rmap(std::move(X), std::move(Y), std::move(img));
}

inline RMap identity_rmap(const RSet& X) {
  std::vector<Vertex> img(X.size());
  for (Vertex v = 0; v < X.size(); ++v) img[v] = v;
  return RMap{X, X, std::move(img)};
}

inline RMap compose(const RMap& g, const RMap& f) {
  if (!(f.cod == g.dom))
    throw ValidationError("compose: codomain/domain mismatch");
  std::vector<Vertex> img(f.img.size());
  for (std::size_t v = 0; v < img.size(); ++v) img[v] = g.img[f.img[v]];
  return RMap{f.dom, g.cod, std::move(img)};
}

struct VertexSubset {
  RSet parent;
  Bitset members;
};

inline VertexSubset make_vertex_subset(const RSet& X,
                                       const std::vector<std::string>& names) {
  Bitset m(X.size());
  for (const auto& s : names) {
    auto v = X.index_of(s);
    if (!v) throw ValidationError("subset member '" + s + "' is not a vertex");
    m.set(*v);
  }
  return VertexSubset{X, std::move(m)};
}

/// Induced r-subset: vertex set S, relation = all parent tuples inside S.
inline RSet induced_subset(const RSet& X, const VertexSubset& S) {
  if (!(S.parent == X))
    throw ValidationError("subset does not belong to this r-set");
  std::vector<Vertex> remap(X.size(), UINT32_MAX);
  std::vector<std::string> names;
  for (Vertex v = 0; v < X.size(); ++v) {
    if (S.members.test(v)) {
      remap[v] = static_cast<Vertex>(names.size());
      names.push_back(X.name(v));
    }
  }
  std::vector<Tuple> tuples;
  for (const Tuple& t : X.tuples()) {
    bool inside = true;
    for (Vertex v : t) inside = inside && S.members.test(v);
    if (!inside) continue;
    Tuple mapped(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = remap[t[i]];
    tuples.push_back(std::move(mapped));
  }
  return RSet::from_indexed(X.arity(), std::move(names), std::move(tuples));
}

// ---------------------------------------------------------------------------
// Product and exponential

struct ProductLayout {
  RSet product;
  RMap p1;
  RMap p2;
  std::size_t cols;  // |V(second factor)|
  Vertex pair_index(Vertex x, Vertex y) const {
    return static_cast<Vertex>(x * cols + y);
  }
};

/// Product r-set. Vertex (x,y) is named "(x,y)" and laid out with the first
/// factor as the major index.
inline ProductLayout product_with_projections(const RSet& X, const RSet& Y) {
  if (X.arity() != Y.arity())
    throw ValidationError("product: arity mismatch");
  const int r = X.arity();
  std::vector<std::string> names;
  names.reserve(X.size() * Y.size());
  std::vector<Vertex> img1, img2;
  for (Vertex x = 0; x < X.size(); ++x) {
    for (Vertex y = 0; y < Y.size(); ++y) {
      names.push_back("(" + X.name(x) + "," + Y.name(y) + ")");
      img1.push_back(x);
      img2.push_back(y);
    }
  }
  std::vector<Tuple> tuples;
  tuples.reserve(X.tuple_count() * Y.tuple_count());
  for (const Tuple& tx : X.tuples()) {
    for (const Tuple& ty : Y.tuples()) {
      Tuple t(r);
      for (int i = 0; i < r; ++i)
        t[i] = static_cast<Vertex>(tx[i] * Y.size() + ty[i]);
      tuples.push_back(std::move(t));
    }
  }
  RSet P = RSet::from_indexed(r, std::move(names), std::move(tuples));
  return ProductLayout{P, RMap{P, X, std::move(img1)},
                       RMap{P, Y, std::move(img2)}, Y.size()};
}

inline RSet product(const RSet& X, const RSet& Y) {
  return product_with_projections(X, Y).product;
}

struct ExpLayout {
  RSet exp;   // Y^X
  RSet base;  // Y
  RSet exponent;  // X
  /// Vertex ids are odometer codes of assignments V(X) -> V(Y), last domain
  /// vertex fastest.
  std::vector<Vertex> decode(Vertex fid) const {
    std::vector<Vertex> img(exponent.size());
    std::size_t code = fid;
    for (std::size_t k = exponent.size(); k-- > 0;) {
      img[k] = static_cast<Vertex>(code % base.size());
      code /= base.size();
    }
    return img;
  }
  Vertex encode(const std::vector<Vertex>& img) const {
    std::size_t code = 0;
    for (Vertex v : img) code = code * base.size() + v;
    return static_cast<Vertex>(code);
  }
};

inline std::string exp_vertex_name(const RSet& Y,
                                   const std::vector<Vertex>& img) {
  if (img.empty()) return "()";
  std::string s;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (i) s += "|";
    s += Y.name(img[i]);
  }
  return s;
}

/// Exponential r-set Y^X of Def "all set maps", with (f_1,...,f_r) related
/// iff they jointly carry R(X) into R(Y).
inline ExpLayout exponential_with_layout(const RSet& Y, const RSet& X,
                                         const Limits& lim = Limits{}) {
  if (X.arity() != Y.arity())
    throw ValidationError("exponential: arity mismatch");
  const int r = X.arity();
  std::size_t count = 1;
  for (std::size_t k = 0; k < X.size(); ++k) {
    count *= Y.size();
    if (Y.size() == 0) {
      count = 0;
      break;
    }
    if (count > lim.max_exponential_vertices)
      throw GuardError("exponential vertices", lim.max_exponential_vertices);
  }
  VisitCounter visits("enumeration visits", lim.max_enumeration_visits);

  std::vector<std::string> names;
  names.reserve(count);
  std::vector<std::vector<Vertex>> assignments;
  assignments.reserve(count);
  std::vector<Vertex> cur(X.size(), 0);
  for (std::size_t fid = 0; fid < count; ++fid) {
    std::size_t code = fid;
    for (std::size_t k = X.size(); k-- > 0;) {
      cur[k] = static_cast<Vertex>(code % Y.size());
      code /= Y.size();
    }
    names.push_back(exp_vertex_name(Y, cur));
    assignments.push_back(cur);
  }
  // Relation: odometer over the r slots with a full check at each leaf.
  std::vector<Tuple> tuples;
  Tuple choice(r);
  Tuple image(r);
  auto leaf_ok = [&]() {
    for (const Tuple& t : X.tuples()) {
      for (int i = 0; i < r; ++i) image[i] = assignments[choice[i]][t[i]];
      if (!Y.has_tuple(image)) return false;
    }
    return true;
  };
  if (count > 0) {
    choice.assign(r, 0);
    while (true) {
      visits.tick();
      if (leaf_ok()) tuples.push_back(choice);
      int k = r - 1;
      while (k >= 0 && choice[k] + 1 == count) {
        choice[k] = 0;
        --k;
      }
      if (k < 0) break;
      ++choice[k];
    }
  }
  RSet E = RSet::from_indexed(r, std::move(names), std::move(tuples));
  return ExpLayout{E, Y, X};
}

inline RSet exponential(const RSet& Y, const RSet& X,
                        const Limits& lim = Limits{}) {
  return exponential_with_layout(Y, X, lim).exp;
}

// ---------------------------------------------------------------------------
// Standard families

inline std::vector<std::string> numeric_names(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  return names;
}

/// Sigma_n: vertices 0..n with the full r-relation [n]^r.
inline RSet standard_sigma(int n, int r) {
  if (n < 0) throw ValidationError("sigma: n must be >= 0");
  std::vector<Tuple> tuples;
  Tuple t(r, 0);
  const std::size_t count = n + 1;
  while (true) {
    tuples.push_back(t);
    int k = r - 1;
    while (k >= 0 && t[k] + 1 == count) {
      t[k] = 0;
      --k;
    }
    if (k < 0) break;
    ++t[k];
  }
  return RSet::from_indexed(r, numeric_names(count), std::move(tuples));
}

/// I_n: vertices 0..n, relation = union over k of {k-1,k}^r.
inline RSet standard_interval(int n, int r) {
  if (n < 0) throw ValidationError("interval: n must be >= 0");
  std::vector<Tuple> tuples;  // n = 0 has an empty relation
  for (int k = 1; k <= n; ++k) {
    Tuple t(r, 0);
    std::vector<int> digits(r, 0);
    while (true) {
      for (int i = 0; i < r; ++i)
        t[i] = static_cast<Vertex>(k - 1 + digits[i]);
      tuples.push_back(t);
      int j = r - 1;
      while (j >= 0 && digits[j] == 1) {
        digits[j] = 0;
        --j;
      }
      if (j < 0) break;
      digits[j] = 1;
    }
  }
  return RSet::from_indexed(r, numeric_names(n + 1), std::move(tuples));
}

/// Loopless complete graph K_n (r = 2).
inline RSet standard_complete(int n) {
  if (n < 1) throw ValidationError("complete: n must be >= 1");
  std::vector<Tuple> tuples;
  for (Vertex i = 0; i < static_cast<Vertex>(n); ++i)
    for (Vertex j = 0; j < static_cast<Vertex>(n); ++j)
      if (i != j) tuples.push_back({i, j});
  return RSet::from_indexed(2, numeric_names(n), std::move(tuples));
}

/// Cycle graph C_n (r = 2), optionally with a loop at every vertex.
inline RSet standard_cycle(int n, bool reflexive) {
  if (n < 3) throw ValidationError("cycle: n must be >= 3");
  std::vector<Tuple> tuples;
  for (Vertex i = 0; i < static_cast<Vertex>(n); ++i) {
    Vertex j = (i + 1) % n;
    tuples.push_back({i, j});
    tuples.push_back({j, i});
    if (reflexive) tuples.push_back({i, i});
  }
  return RSet::from_indexed(2, numeric_names(n), std::move(tuples));
}

/// 2-set of a preorder given as leq pairs over 0..n-1; reflexivity and
/// transitivity are required, not completed.
inline RSet preorder_rset(int n,
                          const std::vector<std::pair<int, int>>& leq_pairs) {
  if (n < 0) throw ValidationError("preorder: n must be >= 0");
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [a, b] : leq_pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw ValidationError("preorder: pair out of range");
    leq[a][b] = true;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (leq[a][b] && leq[b][c] && !leq[a][c])
          throw ValidationError("preorder: relation is not transitive");
  std::vector<Tuple> tuples;
  for (Vertex a = 0; a < static_cast<Vertex>(n); ++a)
    for (Vertex b = 0; b < static_cast<Vertex>(n); ++b)
      if (leq[a][b]) tuples.push_back({a, b});
  return RSet::from_indexed(2, numeric_names(n), std::move(tuples));
}

}  // namespace rtop
