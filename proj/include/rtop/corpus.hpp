#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rtop/rset.hpp"
#include "rtop/simplicial.hpp"

namespace rtop {

struct CorpusEntry {
  std::string name;
  RSet rset;
};

/// The built-in verification corpus. Names are stable; verification output
/// is ordered by this list.
inline std::vector<CorpusEntry> builtin_corpus() {
  auto triangle_boundary =
      complex_from_faces({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}});
  return {
      {"sigma0", standard_sigma(0, 2)},
      {"sigma1", standard_sigma(1, 2)},
      {"sigma2", standard_sigma(2, 2)},
      {"k2", standard_complete(2)},
      {"k3", standard_complete(3)},
      {"c5", standard_cycle(5, false)},
      {"c4_reflexive", standard_cycle(4, true)},
      {"i2", standard_interval(2, 2)},
      {"i3", standard_interval(3, 2)},
      {"tri_r3", complex_to_rset(triangle_boundary, 3)},
  };
}

/// Random r-set: r in {2,3}, up to 7 vertices, relation density 0.3..0.7.
/// Deterministic per generator state; modulo draws keep the stream portable.
inline RSet random_rset(std::mt19937_64& rng) {
  int r = 2 + static_cast<int>(rng() % 2);
  int n = 1 + static_cast<int>(rng() % 7);
  // density in [0.3, 0.7]
  double density = 0.3 + 0.4 * (static_cast<double>(rng() % 1000) / 999.0);
  std::size_t total = 1;
  for (int i = 0; i < r; ++i) total *= n;
  std::vector<Tuple> tuples;
  for (std::size_t code = 0; code < total; ++code) {
    double coin = static_cast<double>(rng() % 1000000) / 1000000.0;
    if (coin >= density) continue;
    Tuple t(r);
    std::size_t c = code;
    for (int i = r - 1; i >= 0; --i) {
      t[i] = static_cast<Vertex>(c % n);
      c /= n;
    }
    tuples.push_back(std::move(t));
  }
  return RSet::from_indexed(r, numeric_names(n), std::move(tuples));
}

/// Random preorder on up to max_n elements: random arrows closed under
/// transitivity, reflexive by construction.
inline RSet random_preorder(std::mt19937_64& rng, int max_n = 6) {
  int n = 1 + static_cast<int>(rng() % max_n);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rng() % 100 < 25) leq[i][j] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j]) pairs.emplace_back(i, j);
  return preorder_rset(n, pairs);
}

/// Random complex on up to max_n vertices from a handful of random
/// generating faces.
inline AbstractSimplicialComplex random_complex(std::mt19937_64& rng,
                                                int max_n = 6) {
  int n = 2 + static_cast<int>(rng() % (max_n - 1));
  int faces = 1 + static_cast<int>(rng() % 5);
  std::vector<Tuple> gen;
  for (int f = 0; f < faces; ++f) {
    int size = 1 + static_cast<int>(rng() % std::min(n, 4));
    Tuple face;
    while (static_cast<int>(face.size()) < size) {
      Vertex v = static_cast<Vertex>(rng() % n);
      if (std::find(face.begin(), face.end(), v) == face.end())
        face.push_back(v);
    }
    gen.push_back(std::move(face));
  }
  // make sure every vertex occurs
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) gen.push_back({v});
  return complex_from_faces(numeric_names(n), gen);
}

}  // namespace rtop
