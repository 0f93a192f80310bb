#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rtop/core.hpp"

namespace rtop {

/// A finite poset over an ordered element list, with the full <= relation
/// packed into bitset rows. leq(i,j) means element i <= element j.
template <class T>
struct FinitePoset {
  std::vector<T> elements;
  std::vector<Bitset> leq_rows;

  std::size_t size() const { return elements.size(); }
  bool leq(std::size_t i, std::size_t j) const { return leq_rows[i].test(j); }
};

template <class T, class Leq>
FinitePoset<T> make_poset(std::vector<T> elements, Leq&& leq,
                          const Limits& lim = Limits{}) {
  if (elements.size() > lim.max_poset_elements)
    throw GuardError("poset elements", lim.max_poset_elements);
  const std::size_t n = elements.size();
  FinitePoset<T> P{std::move(elements), {}};
  P.leq_rows.assign(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || leq(P.elements[i], P.elements[j])) P.leq_rows[i].set(j);
    }
  }
  return P;
}

/// Reflexivity, antisymmetry, transitivity. Test helper; construction via
/// an order predicate cannot violate these unless the predicate does.
template <class T>
void check_poset_axioms(const FinitePoset<T>& P) {
  const std::size_t n = P.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!P.leq(i, i)) throw ValidationError("poset: not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && P.leq(i, j) && P.leq(j, i))
        throw ValidationError("poset: not antisymmetric");
      // i <= j forces everything above j to be above i.
      if (P.leq(i, j) && !P.leq_rows[j].subset_of(P.leq_rows[i]))
        throw ValidationError("poset: not transitive");
    }
  }
}

template <class T>
std::vector<std::size_t> minimal_elements(const FinitePoset<T>& P) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < P.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < P.size() && minimal; ++j)
      if (j != i && P.leq(j, i)) minimal = false;
    if (minimal) out.push_back(i);
  }
  return out;
}

/// Connected components under comparability.
template <class T>
std::vector<int> poset_components(const FinitePoset<T>& P) {
  UnionFind uf(P.size());
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = i + 1; j < P.size(); ++j)
      if (P.leq(i, j) || P.leq(j, i)) uf.unite(i, j);
  return uf.labels();
}

inline int component_count(const std::vector<int>& labels) {
  int c = 0;
  for (int l : labels) c = std::max(c, l + 1);
  return c;
}

/// A poset map as an index table domain -> codomain element positions.
using PosetMap = std::vector<std::size_t>;

template <class S, class T>
bool is_order_preserving(const FinitePoset<S>& P, const FinitePoset<T>& Q,
                         const PosetMap& f) {
  if (f.size() != P.size()) return false;
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j < P.size(); ++j)
      if (P.leq(i, j) && !Q.leq(f[i], f[j])) return false;
  return true;
}

template <class S, class T>
FinitePoset<std::pair<S, T>> poset_product(const FinitePoset<S>& P,
                                           const FinitePoset<T>& Q,
                                           const Limits& lim = Limits{}) {
  if (P.size() * Q.size() > lim.max_poset_elements)
    throw GuardError("poset elements", lim.max_poset_elements);
  std::vector<std::pair<S, T>> elems;
  elems.reserve(P.size() * Q.size());
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j < Q.size(); ++j)
      elems.emplace_back(P.elements[i], Q.elements[j]);
  const std::size_t n = elems.size();
  FinitePoset<std::pair<S, T>> R{std::move(elems), {}};
  R.leq_rows.assign(n, Bitset(n));
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t ai = a / Q.size(), aj = a % Q.size();
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t bi = b / Q.size(), bj = b % Q.size();
      if (P.leq(ai, bi) && Q.leq(aj, bj)) R.leq_rows[a].set(b);
    }
  }
  return R;
}

}  // namespace rtop
