#include <catch2/catch_amalgamated.hpp>

#include "rtop/enumerate.hpp"
#include "rtop/simplicial.hpp"

using namespace rtop;

namespace {

RSet k2() { return make_rset(2, {"a", "b"}, {{"a", "b"}, {"b", "a"}}); }
RSet k3() { return standard_complete(3); }

/// Independent oracle: evaluate the tuple as an actual map Sigma_n x T -> X
/// and check it is a map of r-sets.
bool simplex_oracle(const TruncatedSimplicialSet& S, const Tuple& s) {
  const int n = static_cast<int>(s.size()) - 1;
  auto layout =
      product_with_projections(standard_sigma(n, S.target.arity()), S.domain);
  std::vector<Vertex> img(layout.product.size());
  for (int i = 0; i <= n; ++i)
    for (Vertex t = 0; t < S.domain.size(); ++t)
      img[layout.pair_index(i, t)] = S.vertex_maps[s[i]][t];
  return is_rmap(layout.product, S.target, img);
}

}  // namespace

TEST_CASE("sing of a full 2-point target is the full simplicial set") {
  auto S = sing_truncated(standard_sigma(0, 2), standard_sigma(1, 2), 3);
  for (int n = 0; n <= 3; ++n)
    CHECK(S.count(n) == (1u << (n + 1)));
}

TEST_CASE("sing(K2,K3,1) matches the unfolded compatibility condition") {
  auto S = sing_truncated(k2(), k3(), 1);
  CHECK(S.count(0) == 6);
  // (f,g) is a 1-simplex iff f(a) != g(b) and f(b) != g(a)
  std::size_t expected = 0;
  for (Vertex f = 0; f < 6; ++f)
    for (Vertex g = 0; g < 6; ++g) {
      const auto& fi = S.vertex_maps[f];
      const auto& gi = S.vertex_maps[g];
      bool rel = fi[0] != gi[1] && fi[1] != gi[0];
      CHECK(S.is_simplex({f, g}) == rel);
      if (rel) ++expected;
    }
  CHECK(S.count(1) == expected);
}

TEST_CASE("sing with no maps is empty in every dimension") {
  auto S = sing_truncated(standard_sigma(0, 2), k2(), 2);
  for (int n = 0; n <= 2; ++n) CHECK(S.count(n) == 0);
}

TEST_CASE("every stored simplex re-validates as a map of r-sets") {
  auto S = sing_truncated(k2(), k3(), 2);
  for (int n = 0; n <= 2; ++n)
    for (const Tuple& s : S.simplices[n]) CHECK(simplex_oracle(S, s));
  // and tuples that are not stored fail the oracle
  std::size_t misses = 0;
  for (Vertex f = 0; f < 6 && misses < 10; ++f)
    for (Vertex g = 0; g < 6 && misses < 10; ++g)
      if (!S.is_simplex({f, g})) {
        CHECK_FALSE(simplex_oracle(S, {f, g}));
        ++misses;
      }
  CHECK(misses > 0);
}

TEST_CASE("face and degeneracy identities") {
  auto S = sing_truncated(k2(), k3(), 3);
  // d0(f,g) = (g), d1(f,g) = (f)
  for (const Tuple& s : S.simplices[1]) {
    CHECK(face(s, 0) == Tuple{s[1]});
    CHECK(face(s, 1) == Tuple{s[0]});
  }
  for (const Tuple& s : S.simplices[2]) {
    for (int i = 0; i <= 2; ++i) {
      CHECK(face(degeneracy(s, i), i) == s);  // d_i s_i = id
      CHECK(S.is_simplex(degeneracy_in(S, s, i)));
      CHECK(S.is_simplex(face(s, i)));
    }
    // d_i d_j = d_{j-1} d_i for i < j
    for (int j = 1; j <= 2; ++j)
      for (int i = 0; i < j; ++i)
        CHECK(face(face(s, j), i) == face(face(s, i), j - 1));
  }
  CHECK_THROWS_AS(face(Tuple{0, 1}, 5), ValidationError);
  for (const Tuple& s : S.simplices[3]) {
    CHECK_THROWS_AS(degeneracy_in(S, s, 0), ValidationError);
    break;
  }
}

TEST_CASE("compose_simplices") {
  RSet X = k2(), Y = k3();
  auto SXY = sing_truncated(X, Y, 2);
  auto SYY = sing_truncated(Y, Y, 2);
  auto SXX2 = sing_truncated(X, Y, 2);  // composition target = Sing(X,Y)

  // constant tuple of identities acts as the unit
  Vertex idv = SYY.map_index({0, 1, 2});
  for (int n = 0; n <= 2; ++n) {
    Tuple idt(n + 1, idv);
    REQUIRE(SYY.is_simplex(idt));
    for (const Tuple& s : SXY.simplices[n])
      CHECK(compose_simplices(SYY, idt, SXY, s, SXX2) == s);
  }

  // dimension 0 reduces to composition of r-set maps
  for (const auto& f : enumerate_rmaps(X, Y))
    for (const auto& g : enumerate_rmaps(Y, Y)) {
      Tuple t = compose_simplices(SYY, {SYY.map_index(g.img)}, SXY,
                                  {SXY.map_index(f.img)}, SXY);
      CHECK(SXY.vertex_maps[t[0]] == compose(g, f).img);
    }

  // d_i(tau * sigma) = d_i(tau) * d_i(sigma) on all stored 2-simplices
  for (const Tuple& tau : SYY.simplices[2])
    for (const Tuple& sigma : SXY.simplices[2]) {
      Tuple c = compose_simplices(SYY, tau, SXY, sigma, SXY);
      for (int i = 0; i <= 2; ++i)
        CHECK(face(c, i) == compose_simplices(SYY, face(tau, i), SXY,
                                              face(sigma, i), SXY));
    }

  // associativity over stored 1-simplices
  for (const Tuple& rho : SYY.simplices[1])
    for (const Tuple& tau : SYY.simplices[1])
      for (const Tuple& sigma : SXY.simplices[1]) {
        Tuple left = compose_simplices(
            SYY, rho, SXY, compose_simplices(SYY, tau, SXY, sigma, SXY), SXY);
        Tuple right = compose_simplices(
            SYY, compose_simplices(SYY, rho, SYY, tau, SYY), SXY, sigma, SXY);
        CHECK(left == right);
      }
}

TEST_CASE("clique complexes") {
  CHECK(clique_complex(k2()).simplex_count() == 0);

  auto circle = clique_complex(standard_cycle(4, true));
  CHECK(circle.count(0) == 4);
  CHECK(circle.count(1) == 4);
  CHECK(circle.simplex_count() == 8);

  auto full = clique_complex(standard_sigma(2, 2));
  CHECK(full.simplex_count() == 7);
  CHECK(full.dim() == 2);
}

TEST_CASE("complex encodings as r-sets") {
  auto tri = complex_from_faces({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(tri.simplex_count() == 6);
  CHECK(complex_to_rset(tri, 2).tuple_count() == 9);
  CHECK(complex_to_rset(tri, 3).tuple_count() == 21);
  CHECK_THROWS_AS(complex_to_rset(tri, 1), ValidationError);

  // encoded maps are exactly the simplicial maps: identity and rotations land
  RSet T3 = complex_to_rset(tri, 3);
  CHECK(is_rmap(T3, T3, {1, 2, 0}));
}

TEST_CASE("face poset identification with Hom(Sigma_0, X)") {
  auto a = face_poset_identification(standard_sigma(2, 2));
  CHECK(a.hom.size() == 7);
  CHECK(a.is_order_isomorphism);

  auto b = face_poset_identification(k2());
  CHECK(b.hom.size() == 0);
  CHECK(b.fp.size() == 0);
  CHECK(b.is_order_isomorphism);  // empty on both sides is a success

  auto c = face_poset_identification(standard_cycle(4, true));
  CHECK(c.hom.size() == 8);
  CHECK(c.is_order_isomorphism);
}

TEST_CASE("product comparison of singular complexes") {
  auto R = product_iso(k2(), k3(), k3(), 2);
  CHECK(R.iso.ok);
  for (int n = 0; n <= 2; ++n)
    CHECK(R.lhs.count(n) == R.sy.count(n) * R.sz.count(n));

  // dimension 0 is the pairing bijection on maps
  CHECK(R.lhs.count(0) ==
        enumerate_rmaps(k2(), k3()).size() * enumerate_rmaps(k2(), k3()).size());
}

TEST_CASE("product comparison is natural in the target") {
  // square: Sing(X, YxZ) -> Sing(X, Y'xZ) vs through the product splitting
  RSet X = k2(), Y = k2(), Yp = k3(), Z = k2();
  auto incl = make_rmap(Y, Yp, {0, 1});
  auto A = product_iso(X, Y, Z, 1);
  auto B = product_iso(X, Yp, Z, 1);
  REQUIRE(A.iso.ok);
  REQUIRE(B.iso.ok);
  for (Vertex v = 0; v < A.lhs.vertex_maps.size(); ++v) {
    // route 1: push the map along incl x id, then split in B
    const auto& img = A.lhs.vertex_maps[v];
    std::vector<Vertex> pushed(img.size());
    for (std::size_t x = 0; x < img.size(); ++x) {
      Vertex y = static_cast<Vertex>(img[x] / Z.size());
      Vertex z = static_cast<Vertex>(img[x] % Z.size());
      pushed[x] = B.yz.pair_index(incl.img[y], z);
    }
    Vertex lhs_target = B.lhs.map_index(pushed);
    Vertex route1 = B.iso.vertex_map[lhs_target];

    // route 2: split in A, then push the Y-component
    Vertex pa = A.iso.vertex_map[v];
    Vertex iy = static_cast<Vertex>(pa / A.sz.vertex_maps.size());
    Vertex iz = static_cast<Vertex>(pa % A.sz.vertex_maps.size());
    std::vector<Vertex> yimg = A.sy.vertex_maps[iy];
    for (auto& w : yimg) w = incl.img[w];
    Vertex route2 = static_cast<Vertex>(
        B.sy.map_index(yimg) * B.sz.vertex_maps.size() +
        B.sz.map_index(A.sz.vertex_maps[iz]));
    CHECK(route1 == route2);
  }
}

TEST_CASE("currying comparison of singular complexes") {
  // unit case Y = Sigma_0
  auto unit = curry_iso(k2(), standard_sigma(0, 2), k3(), 2);
  CHECK(unit.iso.ok);

  auto R = curry_iso(standard_sigma(0, 2), k2(), k3(), 2);
  CHECK(R.iso.ok);
  for (int n = 0; n <= 2; ++n) CHECK(R.lhs.count(n) == R.rhs.count(n));
}

TEST_CASE("sing enumeration guard") {
  Limits lim;
  lim.max_enumeration_visits = 50;
  CHECK_THROWS_AS(
      sing_truncated(standard_sigma(1, 2), standard_sigma(2, 2), 3, lim),
      GuardError);
}
