#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "holoforge/group.hpp"
#include "holoforge/group_ops.hpp"
#include "holoforge/linalg.hpp"
#include "support.hpp"

using namespace holoforge;
using testsupport::code_of;

namespace {

RingSpec f2() { return RingSpec(2, 1); }
RingSpec z8() { return RingSpec(2, 3); }

Matrix ring_a() {
  return Matrix(z8(), 4, 4, {3, -1, 1, -2, 0, 3, -3, 1, 0, 3, 4, 3, 2, 0, -2, 3});
}

std::vector<u64> series_orders(const std::vector<Subgroup>& series) {
  std::vector<u64> out;
  for (const auto& s : series) out.push_back(s.order());
  return out;
}

std::vector<std::pair<u64, u64>> order_histogram(const Group& g) {
  std::map<u64, u64> h;
  for (u64 x = 0; x < g.order(); ++x) ++h[element_order(g, x)];
  return {h.begin(), h.end()};
}

}  // namespace

TEST_CASE("cyclic and dihedral basics") {
  auto c12 = cyclic_group(12);
  CHECK(c12->order() == 12);
  CHECK(element_order(*c12, 1) == 12);
  CHECK(element_order(*c12, 8) == 3);
  CHECK(c12->inv(5) == 7);

  auto d8 = dihedral_group(4);
  CHECK(d8->order() == 8);
  u64 rot = d8->generators()[0];
  u64 flip = d8->generators()[1];
  CHECK(element_order(*d8, rot) == 4);
  CHECK(element_order(*d8, flip) == 2);
  CHECK(d8->mul(flip, flip) == d8->identity());
  // flip r flip = r^-1 is the dihedral relation.
  CHECK(d8->conj(flip, rot) == d8->inv(rot));

  CHECK(center(*d8).order() == 2);
  CHECK(derived_subgroup(*d8).order() == 2);
  CHECK(nilpotency_class(*d8) == 2);
  CHECK(centralizer(*d8, {rot}).order() == 4);
  CHECK(normal_closure(*d8, {flip}).order() == 4);
}

TEST_CASE("quaternion group facts") {
  auto q8 = quaternion_group();
  CHECK(q8->order() == 8);
  u64 i = q8->generators()[0], j = q8->generators()[1];
  u64 k = q8->mul(i, j);
  CHECK(q8->mul(j, i) == q8->inv(k));
  CHECK(element_order(*q8, i) == 4);
  CHECK(element_order(*q8, q8->mul(i, i)) == 2);
  CHECK(center(*q8).order() == 2);
  CHECK(derived_subgroup(*q8).order() == 2);
  CHECK(nilpotency_class(*q8) == 2);

  // One involution against five distinguishes Q_8 from D_8.
  auto d8 = dihedral_group(4);
  CHECK(order_histogram(*q8) == std::vector<std::pair<u64, u64>>{{1, 1}, {2, 1}, {4, 6}});
  CHECK(order_histogram(*d8) == std::vector<std::pair<u64, u64>>{{1, 1}, {2, 5}, {4, 2}});
}

TEST_CASE("semidirect product with inversion is dihedral") {
  auto s3 = semidirect(cyclic_group(3), {{0, 2, 1}});
  CHECK(s3->order() == 6);
  CHECK(center(*s3).order() == 1);
  CHECK(derived_subgroup(*s3).order() == 3);
  CHECK(nilpotency_class(*s3) == -1);
  CHECK(!is_abelian(*s3));
  u64 refl = s3->generators()[1];
  CHECK(element_order(*s3, refl) == 2);
  CHECK(normal_closure(*s3, {refl}).order() == 6);

  // A non-homomorphism permutation is rejected.
  CHECK(code_of([] { semidirect(cyclic_group(3), {{1, 0, 2}}); }) == Errc::NotAutomorphism);
  CHECK(code_of([] { semidirect(cyclic_group(3), {{0, 1}}); }) == Errc::NotAutomorphism);
}

TEST_CASE("holomorph of the plane by a transvection is dihedral") {
  Matrix j(f2(), 2, 2, {1, 1, 0, 1});
  auto g = holomorph(f2(), 2, {j});
  CHECK(g->order() == 8);
  CHECK(g->vector_order() == 4);
  CHECK(g->complement().order() == 2);

  Subgroup z = center(*g);
  CHECK(z.order() == 2);
  CHECK(z.contains(g->from_vector({1, 0})));
  CHECK(derived_subgroup(*g).order() == 2);
  CHECK(nilpotency_class(*g) == 2);

  u64 t = g->from_matrix(j);
  u64 v2 = g->from_vector({0, 1});
  // (0,j)(v,1)(0,j)^-1 = (jv,1).
  CHECK(g->conj(t, v2) == g->from_vector({1, 1}));
}

TEST_CASE("holomorph by the full linear group is the symmetric group shape") {
  Matrix j(f2(), 2, 2, {1, 1, 0, 1});
  Matrix w(f2(), 2, 2, {0, 1, 1, 0});
  auto g = holomorph(f2(), 2, {j, w});
  CHECK(g->order() == 24);
  CHECK(center(*g).order() == 1);
  CHECK(series_orders(derived_series(*g)) == std::vector<u64>{24, 12, 4, 1});
  CHECK(nilpotency_class(*g) == -1);
}

TEST_CASE("holomorph by a regular unipotent matrix in rank three") {
  Matrix j(f2(), 3, 3, {1, 1, 0, 0, 1, 1, 0, 0, 1});
  CHECK(matrix_order(j) == 4);
  auto g = holomorph(f2(), 3, {j});
  CHECK(g->order() == 32);

  Subgroup der = derived_subgroup(*g);
  CHECK(der.order() == 4);
  CHECK(der.contains(g->from_vector({1, 0, 0})));
  CHECK(der.contains(g->from_vector({0, 1, 0})));
  CHECK(!der.contains(g->from_vector({0, 0, 1})));

  CHECK(series_orders(lower_central_series(*g)) == std::vector<u64>{32, 4, 2, 1});
  CHECK(nilpotency_class(*g) == 3);

  auto q = quotient_abelian(*g, der);
  CHECK(q.group->order() == 8);
  CHECK(abelian_invariants(*q.group) == std::vector<u64>{4, 2});
}

TEST_CASE("abelian invariants recombine across primes") {
  CHECK(abelian_invariants(*direct_product(cyclic_group(24), cyclic_group(2))) ==
        std::vector<u64>{24, 2});
  CHECK(abelian_invariants(*direct_product(cyclic_group(6), cyclic_group(4))) ==
        std::vector<u64>{12, 2});
  CHECK(abelian_invariants(*direct_product(cyclic_group(2), cyclic_group(3))) ==
        std::vector<u64>{6});
  CHECK(abelian_invariants(*vector_group(2, 3, 4)) == std::vector<u64>{8, 8, 8, 8});
  CHECK(abelian_invariants(*cyclic_group(1)).empty());

  auto s3 = semidirect(cyclic_group(3), {{0, 2, 1}});
  CHECK(code_of([&] { abelian_invariants(*s3); }) == Errc::NotAbelian);
}

TEST_CASE("quotient preconditions") {
  auto s3 = semidirect(cyclic_group(3), {{0, 2, 1}});
  Subgroup refl = subgroup_generated(*s3, {s3->generators()[1]});
  CHECK(refl.order() == 2);
  CHECK(!is_normal(*s3, refl));
  CHECK(code_of([&] { quotient_abelian(*s3, refl); }) == Errc::NotNormal);

  auto d8 = dihedral_group(4);
  Subgroup triv = subgroup_generated(*d8, {});
  CHECK(code_of([&] { quotient_abelian(*d8, triv); }) == Errc::DerivedNotContained);
}

TEST_CASE("index two overgroups of the trivial subgroup") {
  auto g = direct_product(cyclic_group(2), cyclic_group(24));
  Subgroup triv = subgroup_generated(*g, {});
  auto overs = overgroups_of_index_two(*g, triv);
  REQUIRE(overs.size() == 3);
  for (const auto& m : overs) {
    CHECK(m.order() == 2);
    CHECK(m.contains(g->identity()));
  }
}

TEST_CASE("associativity spot checks") {
  std::mt19937_64 rng = testsupport::rng(20260823);
  Matrix j(f2(), 3, 3, {1, 1, 0, 0, 1, 1, 0, 0, 1});
  std::vector<GroupPtr> groups{quaternion_group(), dihedral_group(6), holomorph(f2(), 3, {j}),
                               semidirect(cyclic_group(5), {{0, 2, 4, 1, 3}})};
  for (const auto& g : groups) {
    std::uniform_int_distribution<u64> d(0, g->order() - 1);
    for (int t = 0; t < 50; ++t) {
      u64 x = d(rng), y = d(rng), z = d(rng);
      CHECK(g->mul(g->mul(x, y), z) == g->mul(x, g->mul(y, z)));
      CHECK(g->mul(x, g->inv(x)) == g->identity());
    }
  }
}

TEST_CASE("construction caps and degenerate inputs") {
  CHECK(code_of([] { vector_group(2, 1, 25); }) == Errc::CapExceeded);
  CHECK(code_of([] { holomorph(z8(), 4, {ring_a()}, 1000); }) == Errc::CapExceeded);
  CHECK(code_of([] {
          Matrix s(f2(), 2, 2, {1, 0, 0, 0});
          matrix_group_closure({s});
        }) == Errc::NotInvertible);
  auto d8 = dihedral_group(4);
  CHECK(code_of([&] { subgroup_generated(*d8, {d8->generators()[0]}, 3); }) == Errc::CapExceeded);
}

TEST_CASE("relative holomorph of rank four over the eight element ring") {
  Matrix a = ring_a();
  auto g = holomorph(z8(), 4, {a});
  CHECK(g->order() == 98304);
  CHECK(g->complement().order() == 24);
  CHECK(element_order(*g, g->from_matrix(a)) == 24);

  // Derived subgroup is the translation part of the column span of a - 1.
  Subgroup der = derived_subgroup(*g);
  CHECK(der.order() == 2048);
  std::vector<std::vector<u64>> cols;
  Matrix am1 = a - Matrix::identity(z8(), 4);
  for (int c = 0; c < 4; ++c) {
    std::vector<u64> col(4);
    for (int r = 0; r < 4; ++r) col[r] = am1.at(r, c);
    cols.push_back(col);
  }
  HowellForm hf = howell(z8(), cols, 4);
  CHECK(hf.span_size() == 2048);
  for (u64 x : der.elems) {
    REQUIRE(g->matrix_part(x) == g->complement().identity());
    REQUIRE(hf.contains(g->vector_of(x)));
  }
  CHECK(span_invariants(z8(), cols, 4) == std::vector<u64>{8, 8, 8, 4});
  CHECK(abelian_invariants(*g, der) == std::vector<u64>{8, 8, 8, 4});

  auto q = quotient_abelian(*g, der);
  CHECK(q.group->order() == 48);
  CHECK(abelian_invariants(*q.group) == std::vector<u64>{24, 2});

  // y = (x, a^12) squares to the order four generator of the derived span.
  std::vector<u64> xvec{7, 0, 0, 1};
  u64 y = g->make(vector_to_index(z8(), xvec), g->complement().index_of(a.pow(12)));
  CHECK(g->mul(y, y) == g->from_vector({2, 0, 0, 2}));
  CHECK(!hf.contains(xvec));

  std::vector<u64> wgens = der.gens;
  wgens.push_back(y);
  Subgroup w = subgroup_generated(*g, wgens);
  CHECK(w.order() == 4096);
  CHECK(is_normal(*g, w));
  CHECK(is_abelian(*g, w));
  CHECK(abelian_invariants(*g, w) == std::vector<u64>{8, 8, 8, 8});

  // Exactly three subgroups sit between the derived subgroup and the group
  // at index two over the derived subgroup; their invariants split 2 + 1.
  auto overs = overgroups_of_index_two(*g, der);
  REQUIRE(overs.size() == 3);
  std::vector<std::vector<u64>> invs;
  int contains_y = 0;
  for (const auto& m : overs) {
    CHECK(m.order() == 4096);
    CHECK(is_abelian(*g, m));
    invs.push_back(abelian_invariants(*g, m));
    if (m.contains(y)) ++contains_y;
  }
  std::sort(invs.begin(), invs.end());
  CHECK(invs == std::vector<std::vector<u64>>{
                    {8, 8, 8, 4, 2}, {8, 8, 8, 8}, {8, 8, 8, 8}});
  CHECK(contains_y == 1);
}
