#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rtop/homology.hpp"

using namespace rtop;

namespace {

RSet k2() { return make_rset(2, {"a", "b"}, {{"a", "b"}, {"b", "a"}}); }
RSet k3() { return standard_complete(3); }

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                        int lo, int hi) {
  IntMatrix m(r, c);
  std::uniform_int_distribution<int> d(lo, hi);
  for (auto& v : m.a) v = d(rng);
  return m;
}

bool is_diagonal_with_chain(const IntMatrix& D) {
  for (std::size_t i = 0; i < D.rows; ++i)
    for (std::size_t j = 0; j < D.cols; ++j)
      if (i != j && D.at(i, j) != 0) return false;
  BigInt prev = 0;
  bool seen_zero = false;
  for (std::size_t t = 0; t < std::min(D.rows, D.cols); ++t) {
    const BigInt& d = D.at(t, t);
    if (d < 0) return false;
    if (d == 0) {
      seen_zero = true;
      continue;
    }
    if (seen_zero) return false;  // zeros must come last
    if (prev != 0 && d % prev != 0) return false;
    prev = d;
  }
  return true;
}

/// RP^2 with six vertices; the classic minimal triangulation.
AbstractSimplicialComplex projective_plane() {
  return complex_from_faces(
      numeric_names(6),
      {{0, 1, 4}, {0, 1, 5}, {0, 2, 3}, {0, 2, 5}, {0, 3, 4},
       {1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}});
}

}  // namespace

TEST_CASE("order complexes") {
  // antichain: isolated vertices
  auto anti = make_poset(std::vector<int>{0, 1, 2, 3},
                         [](int, int) { return false; });
  auto K = order_complex(anti);
  CHECK(K.count(0) == 4);
  CHECK(K.simplex_count() == 4);

  // Hom(K2,K3) gives a 12-gon
  auto P = hom_poset(k2(), k3());
  auto G = order_complex(P);
  CHECK(G.count(0) == 12);
  CHECK(G.count(1) == 12);
  CHECK(G.count(2) == 0);

  // a 3-element chain gives the full triangle
  auto chain =
      make_poset(std::vector<int>{0, 1, 2}, [](int a, int b) { return a <= b; });
  CHECK(order_complex(chain).simplex_count() == 7);
}

TEST_CASE("normalized chains") {
  auto empty = normalized_chains(sing_truncated(standard_sigma(0, 2), k2(), 2));
  CHECK(empty.total_cells() == 0);

  auto S = sing_truncated(standard_sigma(0, 2), standard_sigma(1, 2), 2);
  auto C = normalized_chains(S);
  REQUIRE(C.ranks == std::vector<std::size_t>{2, 2, 2});
  CHECK(boundaries_compose_to_zero(C));
  CHECK(C.valid_up_to == 1);
}

TEST_CASE("complex chains and homology of small complexes") {
  auto tri = complex_from_faces(numeric_names(3), {{0, 1, 2}});
  auto C = complex_chains(tri);
  REQUIRE(C.ranks == std::vector<std::size_t>{3, 3, 1});
  CHECK(boundaries_compose_to_zero(C));
  auto H = homology(C, 2);
  CHECK(H.degrees[0].betti == 1);
  CHECK(H.degrees[1].betti == 0);
  CHECK(H.degrees[2].betti == 0);
  for (auto& d : H.degrees) CHECK(d.torsion.empty());

  auto circle = clique_complex(standard_cycle(4, true));
  auto HC = homology(complex_chains(circle), 2);
  CHECK(HC.degrees[0].betti == 1);
  CHECK(HC.degrees[1].betti == 1);
  CHECK(HC.degrees[2].betti == 0);

  auto point = complex_from_faces(numeric_names(1), {{0}});
  auto HP = homology(complex_chains(point), 3);
  CHECK(HP.degrees[0].betti == 1);
  for (int n = 1; n <= 3; ++n) CHECK(HP.degrees[n].betti == 0);
}

TEST_CASE("projective plane torsion through the full pipeline") {
  auto rp2 = projective_plane();
  REQUIRE(rp2.count(0) == 6);
  REQUIRE(rp2.count(1) == 15);
  REQUIRE(rp2.count(2) == 10);
  auto C = complex_chains(rp2);
  REQUIRE(boundaries_compose_to_zero(C));
  auto H = homology(C, 2);
  CHECK(H.degrees[0].betti == 1);
  CHECK(H.degrees[0].torsion.empty());
  CHECK(H.degrees[1].betti == 0);
  REQUIRE(H.degrees[1].torsion.size() == 1);
  CHECK(H.degrees[1].torsion[0] == 2);
  CHECK(H.degrees[2].betti == 0);
}

TEST_CASE("smith normal form basics") {
  IntMatrix zero(3, 4);
  auto z = smith_normal_form(zero);
  CHECK(is_diagonal_with_chain(z.d));
  for (const auto& v : z.d.a) CHECK(v == 0);

  IntMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(1, 1) = 3;
  auto s = smith_normal_form(m);
  CHECK(s.d.at(0, 0) == 1);
  CHECK(s.d.at(1, 1) == 6);
  CHECK(multiply(multiply(s.u, m), s.v).a == s.d.a);
}

TEST_CASE("smith normal form postconditions on random matrices") {
  std::mt19937_64 rng(7321);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, r, c, -3, 3);
    auto s = smith_normal_form(m);
    CHECK(is_diagonal_with_chain(s.d));
    CHECK(multiply(multiply(s.u, m), s.v).a == s.d.a);
    BigInt du = det_bareiss(s.u), dv = det_bareiss(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
  }
}

TEST_CASE("sparse invariant factors agree with dense SNF") {
  std::mt19937_64 rng(991);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    IntMatrix m = random_matrix(rng, r, c, -4, 4);
    // sparsify a little
    for (auto& v : m.a)
      if (rng() % 3 == 0) v = 0;
    std::vector<detail::SparseCol> cols(c);
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i)
        if (m.at(i, j) != 0)
          cols[j].emplace_back(static_cast<std::uint32_t>(i),
                               static_cast<long long>(m.at(i, j)));
    auto sparse = sparse_invariant_factors(r, cols);
    auto dense = smith_normal_form(m);
    std::size_t dense_rank = 0;
    std::vector<BigInt> dense_nontrivial;
    for (std::size_t t = 0; t < std::min(r, c); ++t) {
      if (dense.d.at(t, t) == 0) break;
      ++dense_rank;
      if (dense.d.at(t, t) > 1) dense_nontrivial.push_back(dense.d.at(t, t));
    }
    CHECK(sparse.rank == dense_rank);
    CHECK(sparse.nontrivial == dense_nontrivial);
  }
}

TEST_CASE("hand-rolled torsion chain complex") {
  // one 1-cell mapping twice onto one 0-cell: H_0 = Z/2
  ChainComplex C;
  C.ranks = {1, 1};
  C.boundaries.assign(2, {});
  C.boundaries[1].push_back({{0, 2}});
  auto H = homology(C, 0);
  CHECK(H.degrees[0].betti == 0);
  REQUIRE(H.degrees[0].torsion.size() == 1);
  CHECK(H.degrees[0].torsion[0] == 2);
}

TEST_CASE("theorem-level agreement on the Hom(K2,K3) anchor") {
  // singular pipeline
  auto S = sing_truncated(k2(), k3(), 3);
  auto CS = normalized_chains(S);
  REQUIRE(boundaries_compose_to_zero(CS));
  auto HS = homology(CS, 2);
  // hom pipeline
  auto P = hom_poset(k2(), k3());
  auto CH = complex_chains(order_complex(P));
  REQUIRE(boundaries_compose_to_zero(CH));
  auto HH = homology(CH, 2);

  for (int n = 0; n <= 2; ++n) CHECK(HS.degrees[n] == HH.degrees[n]);
  CHECK(HS.degrees[0].betti == 1);
  CHECK(HS.degrees[1].betti == 1);
  CHECK(HS.degrees[2].betti == 0);

  CHECK(components(S).count == components(P).count);
  CHECK(components(P).count == 1);
}

TEST_CASE("components") {
  CHECK(components(hom_poset(k2(), k2())).count == 2);
  CHECK(components(hom_poset(k2(), k3())).count == 1);
  CHECK(components(hom_poset(standard_sigma(0, 2), k2())).count == 0);

  // Betti_0 equals the combinatorial component count
  for (auto X : {standard_cycle(4, true), standard_sigma(2, 2)}) {
    auto K = clique_complex(X);
    auto H = homology(complex_chains(K), 0);
    CHECK(H.degrees[0].betti == static_cast<std::size_t>(components(K).count));
  }
}

TEST_CASE("homology validity bound") {
  auto S = sing_truncated(k2(), k3(), 2);
  auto C = normalized_chains(S);
  CHECK(C.valid_up_to == 1);
  CHECK_NOTHROW(homology(C, 1));
  CHECK_THROWS_AS(homology(C, 2), ValidationError);
  CHECK_THROWS_AS(homology(C, -1), ValidationError);
}

TEST_CASE("chain cell guard") {
  Limits lim;
  lim.max_chain_cells = 3;
  auto S = sing_truncated(k2(), k3(), 2);
  CHECK_THROWS_AS(normalized_chains(S, lim), GuardError);
}
