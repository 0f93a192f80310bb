#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "rtop/core.hpp"
#include "rtop/rset.hpp"

namespace rtop {

namespace detail {

/// Tuple ids grouped by the largest vertex index they mention; a tuple is
/// fully assigned as soon as the DFS has reached that depth.
inline std::vector<std::vector<std::uint32_t>> tuples_completed_at(
    const RSet& X) {
  std::vector<std::vector<std::uint32_t>> by_depth(X.size());
  for (std::uint32_t tid = 0; tid < X.tuples().size(); ++tid) {
    Vertex top = 0;
    for (Vertex v : X.tuples()[tid]) top = std::max(top, v);
    by_depth[top].push_back(tid);
  }
  return by_depth;
}

}  // namespace detail

/// All relation-preserving total maps X -> Y, in lexicographic order of the
/// image tuple (images in declared codomain order).
inline std::vector<RMap> enumerate_rmaps(const RSet& X, const RSet& Y,
                                         const Limits& lim = Limits{}) {
  if (X.arity() != Y.arity())
    throw ValidationError("enumerate_rmaps: arity mismatch");
  VisitCounter visits("enumeration visits", lim.max_enumeration_visits);
  std::vector<RMap> out;
  if (X.size() == 0) {
    out.push_back(RMap{X, Y, {}});
    return out;
  }
  if (Y.size() == 0) return out;

  const auto completed = detail::tuples_completed_at(X);
  std::vector<Vertex> img(X.size(), 0);
  Tuple image(X.arity());
  auto depth_ok = [&](std::size_t k) {
    for (std::uint32_t tid : completed[k]) {
      const Tuple& t = X.tuples()[tid];
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = img[t[i]];
      if (!Y.has_tuple(image)) return false;
    }
    return true;
  };

  std::size_t k = 0;
  img[0] = 0;
  while (true) {
    if (img[k] == Y.size()) {
      if (k == 0) break;
      --k;
      ++img[k];
      continue;
    }
    visits.tick();
    if (!depth_ok(k)) {
      ++img[k];
      continue;
    }
    if (k + 1 == X.size()) {
      out.push_back(RMap{X, Y, img});
      ++img[k];
      continue;
    }
    ++k;
    img[k] = 0;
  }
  return out;
}

namespace detail {

/// Cheap canonical invariant: counts of relation tuples indexed by the
/// multiset of positions the vertex occupies in the tuple.
inline std::vector<std::string> vertex_signatures(const RSet& X) {
  std::vector<std::map<std::vector<std::uint8_t>, int>> sig(X.size());
  std::vector<std::vector<std::uint8_t>> where(X.size());
  for (const Tuple& t : X.tuples()) {
    for (Vertex v : t) where[v].clear();
    for (std::uint8_t i = 0; i < t.size(); ++i) where[t[i]].push_back(i);
    for (Vertex v : t) {
      if (!where[v].empty()) {
        sig[v][where[v]] += 1;
        where[v].clear();
      }
    }
  }
  std::vector<std::string> out(X.size());
  for (Vertex v = 0; v < X.size(); ++v) {
    std::string s;
    for (const auto& [poses, cnt] : sig[v]) {
      s += std::to_string(cnt) + "x[";
      for (auto p : poses) s += static_cast<char>('0' + p);
      s += "]";
    }
    out[v] = s;
  }
  return out;
}

}  // namespace detail

/// Searches for an isomorphism of r-sets: a bijective relation-preserving
/// map whose inverse is also relation-preserving. Deterministic for fixed
/// vertex orderings.
inline std::optional<RMap> find_isomorphism(const RSet& X, const RSet& Y,
                                            const Limits& lim = Limits{}) {
  if (X.arity() != Y.arity()) return std::nullopt;
  if (X.size() != Y.size() || X.tuple_count() != Y.tuple_count())
    return std::nullopt;
  if (X.size() == 0) return RMap{X, Y, {}};

  const auto sx = detail::vertex_signatures(X);
  const auto sy = detail::vertex_signatures(Y);
  {
    auto a = sx;
    auto b = sy;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  VisitCounter visits("enumeration visits", lim.max_enumeration_visits);
  const auto completed = detail::tuples_completed_at(X);
  std::vector<Vertex> img(X.size(), 0);
  std::vector<bool> used(Y.size(), false);
  Tuple image(X.arity());

  auto depth_ok = [&](std::size_t k) {
    for (std::uint32_t tid : completed[k]) {
      const Tuple& t = X.tuples()[tid];
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = img[t[i]];
      if (!Y.has_tuple(image)) return false;
    }
    return true;
  };

  // Injective + forward-preserving + equal tuple counts already forces the
  // inverse to preserve the relation, so the leaf needs no extra check.
  std::size_t k = 0;
  img[0] = 0;
  while (true) {
    if (img[k] == Y.size()) {
      if (k == 0) break;
      --k;
      used[img[k]] = false;
      ++img[k];
      continue;
    }
    Vertex w = img[k];
    if (used[w] || sx[k] != sy[w]) {
      ++img[k];
      continue;
    }
    visits.tick();
    used[w] = true;
    if (!depth_ok(k)) {
      used[w] = false;
      ++img[k];
      continue;
    }
    if (k + 1 == X.size()) return RMap{X, Y, img};
    ++k;
    img[k] = 0;
  }
  return std::nullopt;
}

}  // namespace rtop
