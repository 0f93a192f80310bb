#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "rtop/core.hpp"
#include "rtop/enumerate.hpp"
#include "rtop/poset.hpp"
#include "rtop/rset.hpp"

namespace rtop {

/// A multi-map X -> Y: every vertex carries a nonempty codomain subset and
/// every relation tuple's value-set product lands in R(Y). Points of the Hom
/// complex, ordered by pointwise inclusion.
struct MultiMap {
  RSet dom;
  RSet cod;
  std::vector<Bitset> values;

  friend bool operator==(const MultiMap& a, const MultiMap& b) {
    return a.values == b.values && a.dom == b.dom && a.cod == b.cod;
  }
};

inline bool multimap_leq(const MultiMap& a, const MultiMap& b) {
  for (std::size_t v = 0; v < a.values.size(); ++v)
    if (!a.values[v].subset_of(b.values[v])) return false;
  return true;
}

/// Sum over x of (|eta(x)| - 1); finite multi-maps are the ones where this
/// converges, which is automatic on finite r-sets.
inline std::size_t multimap_excess(const MultiMap& m) {
  std::size_t s = 0;
  for (const auto& v : m.values) s += v.count() - 1;
  return s;
}

namespace detail {

/// True iff values[t[0]] x ... x values[t[r-1]] lands inside R(Y).
inline bool product_in_relation(const RSet& Y, const Tuple& t,
                                const std::vector<Bitset>& values) {
  const int r = Y.arity();
  Tuple prefix(r - 1);
  bool ok = true;
  auto rec = [&](auto&& self, int pos) -> void {
    if (!ok) return;
    if (pos == r - 1) {
      const Bitset* allowed = Y.last_allowed(prefix);
      if (!allowed || !values[t[pos]].subset_of(*allowed)) ok = false;
      return;
    }
    values[t[pos]].for_each([&](Vertex w) {
      if (!ok) return;
      prefix[pos] = w;
      self(self, pos + 1);
    });
  };
  rec(rec, 0);
  return ok;
}

}  // namespace detail

/// The defining multi-map condition plus nonemptiness of every value set.
inline bool is_multimap(const RSet& X, const RSet& Y,
                        const std::vector<Bitset>& values) {
  if (values.size() != X.size())
    throw ValidationError("multi-map assignment is not total");
  for (const auto& v : values) {
    if (v.size() != Y.size())
      throw ValidationError("multi-map value set over the wrong codomain");
    if (v.none()) return false;
  }
  for (const Tuple& t : X.tuples())
    if (!detail::product_in_relation(Y, t, values)) return false;
  return true;
}

inline bool is_multimap(const MultiMap& m) {
  return is_multimap(m.dom, m.cod, m.values);
}

inline MultiMap as_multimap(const RMap& f) {
  std::vector<Bitset> values;
  values.reserve(f.img.size());
  for (Vertex w : f.img)
    values.push_back(Bitset::singleton(f.cod.size(), w));
  return MultiMap{f.dom, f.cod, std::move(values)};
}

/// All multi-maps X -> Y in lexicographic order of the value-mask sequence.
/// Depth-first over domain vertices in declared order, pruning on the first
/// violated fully-assigned tuple.
inline std::vector<MultiMap> hom_elements(const RSet& X, const RSet& Y,
                                          const Limits& lim = Limits{}) {
  if (X.arity() != Y.arity())
    throw ValidationError("hom: arity mismatch");
  std::vector<MultiMap> out;
  if (X.size() == 0) {
    out.push_back(MultiMap{X, Y, {}});
    return out;
  }
  if (Y.size() == 0) return out;
  if (Y.size() >= 64)
    throw GuardError("enumeration visits", lim.max_enumeration_visits);

  VisitCounter visits("enumeration visits", lim.max_enumeration_visits);
  const auto completed = detail::tuples_completed_at(X);
  const std::uint64_t top = (1ULL << Y.size()) - 1;
  std::vector<std::uint64_t> masks(X.size(), 0);
  std::vector<Bitset> values(X.size(), Bitset(Y.size()));

  auto set_value = [&](std::size_t k, std::uint64_t m) {
    Bitset b(Y.size());
    for (std::uint64_t rest = m; rest; rest &= rest - 1)
      b.set(static_cast<std::size_t>(__builtin_ctzll(rest)));
    values[k] = std::move(b);
  };
  auto depth_ok = [&](std::size_t k) {
    for (std::uint32_t tid : completed[k])
      if (!detail::product_in_relation(Y, X.tuples()[tid], values))
        return false;
    return true;
  };

  std::size_t k = 0;
  masks[0] = 1;
  while (true) {
    if (masks[k] > top) {
      if (k == 0) break;
      --k;
      ++masks[k];
      continue;
    }
    visits.tick();
    set_value(k, masks[k]);
    if (!depth_ok(k)) {
      ++masks[k];
      continue;
    }
    if (k + 1 == X.size()) {
      out.push_back(MultiMap{X, Y, values});
      ++masks[k];
      continue;
    }
    ++k;
    masks[k] = 1;
  }
  return out;
}

/// The Hom complex as an element list; the explicit leq-matrix poset is
/// materialized separately (it is quadratic).
struct HomComplex {
  RSet dom;
  RSet cod;
  std::vector<MultiMap> elements;

  std::size_t size() const { return elements.size(); }

  /// Position of a multi-map among the elements (they are emitted in
  /// lexicographic mask order, so binary search applies).
  std::size_t index_of(const MultiMap& m) const {
    auto less = [](const MultiMap& a, const MultiMap& b) {
      for (std::size_t v = 0; v < a.values.size(); ++v) {
        if (a.values[v] != b.values[v]) return a.values[v] < b.values[v];
      }
      return false;
    };
    auto it = std::lower_bound(elements.begin(), elements.end(), m, less);
    if (it == elements.end() || !(it->values == m.values))
      throw ValidationError("multi-map is not an element of this Hom complex");
    return static_cast<std::size_t>(it - elements.begin());
  }
};

inline HomComplex hom_complex(const RSet& X, const RSet& Y,
                              const Limits& lim = Limits{}) {
  return HomComplex{X, Y, hom_elements(X, Y, lim)};
}

inline FinitePoset<MultiMap> hom_poset(const RSet& X, const RSet& Y,
                                       const Limits& lim = Limits{}) {
  return make_poset(hom_elements(X, Y, lim), multimap_leq, lim);
}

/// (tau * eta)(x) = union of tau(y) over y in eta(x).
inline MultiMap compose(const MultiMap& tau, const MultiMap& eta) {
  if (!(eta.cod == tau.dom))
    throw ValidationError("compose: middle r-set mismatch");
  std::vector<Bitset> values;
  values.reserve(eta.values.size());
  for (const Bitset& s : eta.values) {
    Bitset u(tau.cod.size());
    s.for_each([&](Vertex y) { u |= tau.values[y]; });
    values.push_back(std::move(u));
  }
  return MultiMap{eta.dom, tau.cod, std::move(values)};
}

/// f_*: post-compose values with f.
inline MultiMap pushforward(const RMap& f, const MultiMap& eta) {
  if (!(eta.cod == f.dom))
    throw ValidationError("pushforward: codomain mismatch");
  std::vector<Bitset> values;
  values.reserve(eta.values.size());
  for (const Bitset& s : eta.values) {
    Bitset u(f.cod.size());
    s.for_each([&](Vertex y) { u.set(f.img[y]); });
    values.push_back(std::move(u));
  }
  return MultiMap{eta.dom, f.cod, std::move(values)};
}

/// f^*: precompose the assignment with f.
inline MultiMap pullback(const RMap& f, const MultiMap& eta) {
  if (!(eta.dom == f.cod))
    throw ValidationError("pullback: domain mismatch");
  std::vector<Bitset> values;
  values.reserve(f.img.size());
  for (Vertex v : f.img) values.push_back(eta.values[v]);
  return MultiMap{f.dom, eta.cod, std::move(values)};
}

/// Index table of f_*: Hom(X,Y1) -> Hom(X,Y2) over prebuilt complexes.
inline PosetMap pushforward_map(const RMap& f, const HomComplex& from,
                                const HomComplex& to) {
  PosetMap out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i)
    out[i] = to.index_of(pushforward(f, from.elements[i]));
  return out;
}

inline PosetMap pullback_map(const RMap& f, const HomComplex& from,
                             const HomComplex& to) {
  PosetMap out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i)
    out[i] = to.index_of(pullback(f, from.elements[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Homotopy-comparison maps

/// p: Hom(X, YxZ) -> Hom(X,Y) x Hom(X,Z) via the projections, and
/// i: the reverse, i(eta,tau)(x) = eta(x) x tau(x).
struct ProductComparison {
  ProductLayout yz;
  HomComplex hom_x_yz;
  HomComplex hom_x_y;
  HomComplex hom_x_z;
  std::vector<std::pair<std::size_t, std::size_t>> p;  // by hom_x_yz index
  std::vector<std::vector<std::size_t>> i;             // [iY][iZ] -> index
};

inline ProductComparison product_compare(const RSet& X, const RSet& Y,
                                         const RSet& Z,
                                         const Limits& lim = Limits{}) {
  ProductComparison R{product_with_projections(Y, Z), {}, {}, {}, {}, {}};
  R.hom_x_yz = hom_complex(X, R.yz.product, lim);
  R.hom_x_y = hom_complex(X, Y, lim);
  R.hom_x_z = hom_complex(X, Z, lim);

  R.p.reserve(R.hom_x_yz.size());
  for (const MultiMap& eta : R.hom_x_yz.elements) {
    MultiMap a = pushforward(R.yz.p1, eta);
    MultiMap b = pushforward(R.yz.p2, eta);
    R.p.emplace_back(R.hom_x_y.index_of(a), R.hom_x_z.index_of(b));
  }

  R.i.assign(R.hom_x_y.size(),
             std::vector<std::size_t>(R.hom_x_z.size(), 0));
  for (std::size_t a = 0; a < R.hom_x_y.size(); ++a) {
    for (std::size_t b = 0; b < R.hom_x_z.size(); ++b) {
      const MultiMap& eta = R.hom_x_y.elements[a];
      const MultiMap& tau = R.hom_x_z.elements[b];
      std::vector<Bitset> values;
      values.reserve(X.size());
      for (std::size_t v = 0; v < X.size(); ++v) {
        Bitset m(R.yz.product.size());
        eta.values[v].for_each([&](Vertex y) {
          tau.values[v].for_each(
              [&](Vertex z) { m.set(R.yz.pair_index(y, z)); });
        });
        values.push_back(std::move(m));
      }
      R.i[a][b] = R.hom_x_yz.index_of(MultiMap{X, R.yz.product, values});
    }
  }
  return R;
}

/// Phi': Hom(XxY, Z) -> Hom(X, Z^Y) and Psi': the reverse, from the proof of
/// the currying homotopy equivalence.
struct ExpComparison {
  ProductLayout xy;
  ExpLayout zy;
  HomComplex hom_prod;  // Hom(XxY, Z)
  HomComplex hom_exp;   // Hom(X, Z^Y)
  std::vector<std::size_t> phi;  // hom_prod index -> hom_exp index
  std::vector<std::size_t> psi;  // hom_exp index -> hom_prod index
};

inline ExpComparison exp_compare(const RSet& X, const RSet& Y, const RSet& Z,
                                 const Limits& lim = Limits{}) {
  ExpComparison R{product_with_projections(X, Y),
                  exponential_with_layout(Z, Y, lim),
                  {},
                  {},
                  {},
                  {}};
  R.hom_prod = hom_complex(R.xy.product, Z, lim);
  R.hom_exp = hom_complex(X, R.zy.exp, lim);

  // Phi'(eta)(x) = { f : V(Y) -> V(Z) | f(y) in eta(x,y) for all y }.
  R.phi.reserve(R.hom_prod.size());
  for (const MultiMap& eta : R.hom_prod.elements) {
    std::vector<Bitset> values;
    values.reserve(X.size());
    for (Vertex x = 0; x < X.size(); ++x) {
      Bitset m(R.zy.exp.size());
      for (Vertex fid = 0; fid < R.zy.exp.size(); ++fid) {
        auto img = R.zy.decode(fid);
        bool inside = true;
        for (Vertex y = 0; y < Y.size() && inside; ++y)
          inside = eta.values[R.xy.pair_index(x, y)].test(img[y]);
        if (inside) m.set(fid);
      }
      values.push_back(std::move(m));
    }
    R.phi.push_back(R.hom_exp.index_of(MultiMap{X, R.zy.exp, values}));
  }

  // Psi'(eta)(x,y) = { f(y) | f in eta(x) }.
  R.psi.reserve(R.hom_exp.size());
  for (const MultiMap& eta : R.hom_exp.elements) {
    std::vector<Bitset> values(X.size() * Y.size(), Bitset(Z.size()));
    for (Vertex x = 0; x < X.size(); ++x) {
      eta.values[x].for_each([&](Vertex fid) {
        auto img = R.zy.decode(fid);
        for (Vertex y = 0; y < Y.size(); ++y)
          values[R.xy.pair_index(x, y)].set(img[y]);
      });
    }
    R.psi.push_back(
        R.hom_prod.index_of(MultiMap{R.xy.product, Z, std::move(values)}));
  }
  return R;
}

}  // namespace rtop
