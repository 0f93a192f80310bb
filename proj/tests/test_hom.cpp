#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rtop/enumerate.hpp"
#include "rtop/hom.hpp"
#include "rtop/poset.hpp"

using namespace rtop;

namespace {

RSet k2() { return make_rset(2, {"a", "b"}, {{"a", "b"}, {"b", "a"}}); }
RSet k3() { return standard_complete(3); }

Bitset mask_of(std::size_t n, std::initializer_list<std::size_t> bits) {
  Bitset b(n);
  for (auto i : bits) b.set(i);
  return b;
}

/// Exhaustive enumeration over all nonempty-subset assignments, the oracle
/// for hom_elements.
std::size_t brute_force_hom_count(const RSet& X, const RSet& Y) {
  if (X.size() == 0) return 1;
  if (Y.size() == 0) return 0;
  const std::uint64_t top = (1ULL << Y.size()) - 1;
  std::vector<std::uint64_t> masks(X.size(), 1);
  std::size_t count = 0;
  while (true) {
    std::vector<Bitset> values;
    for (auto m : masks) {
      Bitset b(Y.size());
      for (std::uint64_t rest = m; rest; rest &= rest - 1)
        b.set(static_cast<std::size_t>(__builtin_ctzll(rest)));
      values.push_back(std::move(b));
    }
    if (is_multimap(X, Y, values)) ++count;
    std::size_t k = X.size();
    while (k > 0 && masks[k - 1] == top) masks[--k] = 1;
    if (k == 0) break;
    ++masks[k - 1];
  }
  return count;
}

}  // namespace

TEST_CASE("is_multimap") {
  RSet X = k2();
  CHECK(is_multimap(as_multimap(identity_rmap(X))));

  // eta(a) = {a,b}, eta(b) = {b} needs (a,a) in the relation
  CHECK_FALSE(is_multimap(X, X, {mask_of(2, {0, 1}), mask_of(2, {1})}));

  // empty value set
  CHECK_FALSE(is_multimap(X, X, {mask_of(2, {0}), Bitset(2)}));

  CHECK_THROWS_AS(is_multimap(X, X, {mask_of(2, {0})}), ValidationError);
}

TEST_CASE("hom_poset on small instances") {
  RSet X = k2();
  auto P = hom_poset(X, X);
  CHECK(P.size() == 2);
  check_poset_axioms(P);
  CHECK_FALSE(P.leq(0, 1));
  CHECK_FALSE(P.leq(1, 0));

  auto Q = hom_poset(X, k3());
  CHECK(Q.size() == 12);
  check_poset_axioms(Q);

  auto E = hom_poset(standard_sigma(0, 2), X);
  CHECK(E.size() == 0);
}

TEST_CASE("hom_elements agree with the exhaustive oracle") {
  CHECK(hom_elements(k2(), k3()).size() == brute_force_hom_count(k2(), k3()));
  RSet c4r = standard_cycle(4, true);
  CHECK(hom_elements(k2(), c4r).size() == brute_force_hom_count(k2(), c4r));
  RSet i2 = standard_interval(2, 2);
  CHECK(hom_elements(i2, i2).size() == brute_force_hom_count(i2, i2));
  for (const auto& m : hom_elements(i2, i2)) CHECK(is_multimap(m));
}

TEST_CASE("minimal elements of Hom are the r-set maps") {
  for (auto [X, Y] : {std::pair{k2(), k3()}, {k2(), k2()},
                      {standard_interval(2, 2), standard_cycle(4, true)}}) {
    auto P = hom_poset(X, Y);
    auto mins = minimal_elements(P);
    auto maps = enumerate_rmaps(X, Y);
    REQUIRE(mins.size() == maps.size());
    // every minimal element is singleton-valued and comes from a map
    for (std::size_t idx : mins) {
      const MultiMap& m = P.elements[idx];
      std::vector<Vertex> img;
      for (const auto& v : m.values) {
        REQUIRE(v.count() == 1);
        img.push_back(v.bits()[0]);
      }
      CHECK(is_rmap(X, Y, img));
    }
  }
}

TEST_CASE("every finite multi-map has finite excess") {
  for (const auto& m : hom_elements(k2(), k3()))
    CHECK(multimap_excess(m) < 1000);
}

TEST_CASE("compose: unit law and functorial identities") {
  RSet X = k2(), Y = k3();
  auto hom_xy = hom_complex(X, Y);
  MultiMap idy = as_multimap(identity_rmap(Y));
  for (const auto& eta : hom_xy.elements) {
    CHECK(compose(idy, eta) == eta);
    CHECK(is_multimap(compose(idy, eta)));
  }

  // tau * f = f^*(tau) for maps f
  for (const auto& f : enumerate_rmaps(X, Y)) {
    for (const auto& tau : hom_complex(Y, Y).elements) {
      CHECK(compose(tau, as_multimap(f)) == pullback(f, tau));
    }
  }

  // g * eta = g_*(eta) for maps g
  for (const auto& g : enumerate_rmaps(Y, Y)) {
    for (const auto& eta : hom_xy.elements) {
      CHECK(compose(as_multimap(g), eta) == pushforward(g, eta));
    }
  }
}

TEST_CASE("compose is associative and monotone") {
  RSet X = k2(), Y = k3();
  auto hom_xy = hom_elements(X, Y);
  auto hom_yy = hom_elements(Y, Y);
  for (const auto& rho : hom_yy)
    for (const auto& tau : hom_yy)
      for (const auto& eta : hom_xy)
        CHECK(compose(compose(rho, tau), eta) ==
              compose(rho, compose(tau, eta)));

  for (const auto& a : hom_xy)
    for (const auto& b : hom_xy) {
      if (!multimap_leq(a, b)) continue;
      for (const auto& tau : hom_yy)
        CHECK(multimap_leq(compose(tau, a), compose(tau, b)));
    }
  for (const auto& s : hom_yy)
    for (const auto& t : hom_yy) {
      if (!multimap_leq(s, t)) continue;
      for (const auto& eta : hom_xy)
        CHECK(multimap_leq(compose(s, eta), compose(t, eta)));
    }
}

TEST_CASE("pushforward and pullback are order-preserving poset maps") {
  RSet X = k2();
  auto hxx = hom_complex(X, X);
  auto swap = make_rmap(X, X, {1, 0});

  auto push_id = pushforward_map(identity_rmap(X), hxx, hxx);
  for (std::size_t i = 0; i < push_id.size(); ++i) CHECK(push_id[i] == i);

  auto push_swap = pushforward_map(swap, hxx, hxx);
  CHECK(push_swap == PosetMap{1, 0});

  // monotonicity over a poset with nontrivial order
  RSet Y = k3();
  auto hxy = hom_complex(X, Y);
  for (const auto& f : enumerate_rmaps(Y, Y)) {
    for (const auto& a : hxy.elements)
      for (const auto& b : hxy.elements)
        if (multimap_leq(a, b))
          CHECK(multimap_leq(pushforward(f, a), pushforward(f, b)));
  }

  // pullback along the inclusion Sigma_0 -> Sigma_1 restricts to vertex 0
  RSet s0 = standard_sigma(0, 2), s1 = standard_sigma(1, 2),
       s2 = standard_sigma(2, 2);
  auto incl = make_rmap(s0, s1, {0});
  for (const auto& eta : hom_elements(s1, s2)) {
    MultiMap r = pullback(incl, eta);
    REQUIRE(r.values.size() == 1);
    CHECK(r.values[0] == eta.values[0]);
  }

  // functoriality (g o f)^* = f^* o g^*
  auto f = make_rmap(s0, s1, {1});
  auto g = make_rmap(s1, s1, {1, 0});
  for (const auto& eta : hom_elements(s1, s2))
    CHECK(pullback(f, pullback(g, eta)) == pullback(compose(g, f), eta));
}

TEST_CASE("product comparison maps: p o i = id and i o p >= id") {
  for (auto [X, Y, Z] :
       {std::tuple{k2(), k3(), k3()}, {standard_sigma(0, 2), k2(), k3()}}) {
    auto R = product_compare(X, Y, Z);
    // p o i = id on the full product poset
    for (std::size_t a = 0; a < R.hom_x_y.size(); ++a)
      for (std::size_t b = 0; b < R.hom_x_z.size(); ++b)
        CHECK(R.p[R.i[a][b]] == std::make_pair(a, b));
    // i o p >= id elementwise
    for (std::size_t e = 0; e < R.hom_x_yz.size(); ++e) {
      auto [a, b] = R.p[e];
      CHECK(multimap_leq(R.hom_x_yz.elements[e],
                         R.hom_x_yz.elements[R.i[a][b]]));
    }
    // on singleton-valued elements i o p is the identity
    for (std::size_t e = 0; e < R.hom_x_yz.size(); ++e) {
      bool singleton = true;
      for (const auto& v : R.hom_x_yz.elements[e].values)
        singleton &= v.count() == 1;
      if (singleton) {
        auto [a, b] = R.p[e];
        CHECK(R.i[a][b] == e);
      }
    }
  }
}

TEST_CASE("exponential comparison maps: Psi' o Phi' = id, Phi' o Psi' >= id") {
  for (auto [X, Y, Z] :
       {std::tuple{standard_sigma(0, 2), k2(), k3()},
        {k2(), k2(), k3()}}) {
    auto R = exp_compare(X, Y, Z);
    for (std::size_t e = 0; e < R.hom_prod.size(); ++e)
      CHECK(R.psi[R.phi[e]] == e);
    for (std::size_t e = 0; e < R.hom_exp.size(); ++e)
      CHECK(multimap_leq(R.hom_exp.elements[e],
                         R.hom_exp.elements[R.phi[R.psi[e]]]));
    for (const auto& m : R.hom_prod.elements) CHECK(is_multimap(m));
    for (const auto& m : R.hom_exp.elements) CHECK(is_multimap(m));
  }
}

TEST_CASE("hom enumeration guard is recoverable") {
  Limits lim;
  lim.max_enumeration_visits = 10;
  CHECK_THROWS_AS(hom_elements(k3(), k3(), lim), GuardError);
}
