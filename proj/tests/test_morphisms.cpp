#include <catch2/catch_amalgamated.hpp>

#include "holoforge/group.hpp"
#include "holoforge/group_ops.hpp"
#include "holoforge/morphisms.hpp"
#include "support.hpp"

using namespace holoforge;
using testsupport::code_of;

namespace {

RingSpec f2() { return RingSpec(2, 1); }
RingSpec f3() { return RingSpec(3, 1); }

GroupPtr sym4() {
  return std::make_shared<PermGroup>(4, std::vector<std::vector<u64>>{{1, 0, 2, 3}, {1, 2, 3, 0}});
}

}  // namespace

TEST_CASE("isomorphic pairs produce verified witnesses") {
  Matrix j(f2(), 2, 2, {1, 1, 0, 1});
  auto hol = holomorph(f2(), 2, {j});
  auto d8 = dihedral_group(4);
  auto r = are_isomorphic(*hol, *d8);
  REQUIRE(r.isomorphic);
  CHECK(is_isomorphism(*hol, *d8, r.map));

  auto s3a = semidirect(cyclic_group(3), {{0, 2, 1}});
  auto s3b = dihedral_group(3);
  auto s3c = matrix_group_closure({Matrix(f2(), 2, 2, {1, 1, 0, 1}), Matrix(f2(), 2, 2, {0, 1, 1, 0})});
  CHECK(are_isomorphic(*s3a, *s3b).isomorphic);
  CHECK(are_isomorphic(*s3a, *s3c).isomorphic);

  Matrix w(f2(), 2, 2, {0, 1, 1, 0});
  auto affine = holomorph(f2(), 2, {j, w});
  auto r4 = are_isomorphic(*affine, *sym4());
  REQUIRE(r4.isomorphic);
  CHECK(is_isomorphism(*affine, *sym4(), r4.map));
}

TEST_CASE("non-isomorphic pairs are refuted") {
  auto d8 = dihedral_group(4);
  auto q8 = quaternion_group();
  auto r = are_isomorphic(*d8, *q8);
  CHECK(!r.isomorphic);
  // The order histograms already disagree, so no extension is spent.
  CHECK(r.extensions_used == 0);

  auto c8 = cyclic_group(8);
  auto c4xc2 = direct_product(cyclic_group(4), cyclic_group(2));
  auto e8 = vector_group(2, 1, 3);
  CHECK(!are_isomorphic(*c8, *c4xc2).isomorphic);
  CHECK(!are_isomorphic(*c8, *e8).isomorphic);
  CHECK(!are_isomorphic(*c4xc2, *e8).isomorphic);
  CHECK(!are_isomorphic(*c8, *cyclic_group(6)).isomorphic);

  CHECK(are_isomorphic(*cyclic_group(1), *cyclic_group(1)).isomorphic);
}

TEST_CASE("holomorphs of conjugate generators are isomorphic") {
  Matrix j(f3(), 2, 2, {1, 1, 0, 1});
  Matrix g(f3(), 2, 2, {2, 0, 0, 1});
  Matrix moved = g * j * inverse(g);
  REQUIRE(!(moved == j));
  auto a = holomorph(f3(), 2, {j});
  auto b = holomorph(f3(), 2, {moved});
  CHECK(a->order() == 27);
  CHECK(are_isomorphic(*a, *b).isomorphic);
}

TEST_CASE("automorphism counts match classical values") {
  CHECK(all_automorphisms(*cyclic_group(5)).size() == 4);
  CHECK(all_automorphisms(*cyclic_group(7)).size() == 6);
  CHECK(all_automorphisms(*cyclic_group(8)).size() == 4);
  CHECK(all_automorphisms(*cyclic_group(6)).size() == 2);
  CHECK(all_automorphisms(*dihedral_group(4)).size() == 8);
  CHECK(all_automorphisms(*quaternion_group()).size() == 24);
  CHECK(all_automorphisms(*dihedral_group(3)).size() == 6);
  CHECK(all_automorphisms(*vector_group(2, 1, 3)).size() == 168);

  auto q8 = quaternion_group();
  for (const auto& phi : all_automorphisms(*q8)) CHECK(is_isomorphism(*q8, *q8, phi));
  CHECK(automorphism_group(*dihedral_group(4))->order() == 8);
}

TEST_CASE("inner automorphisms") {
  auto s3 = dihedral_group(3);
  u64 refl = s3->generators()[1];
  auto phi = inner_automorphism(*s3, refl);
  CHECK(is_isomorphism(*s3, *s3, phi));
  CHECK(phi != inner_automorphism(*s3, s3->identity()));
  CHECK(inner_automorphism(*cyclic_group(6), 3) ==
        std::vector<u64>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("small generating sets") {
  CHECK(small_generating_set(*cyclic_group(12)).size() == 1);
  CHECK(small_generating_set(*quaternion_group()).size() == 2);
  CHECK(small_generating_set(*vector_group(2, 1, 3)).size() == 3);
  auto g = dihedral_group(6);
  auto gens = small_generating_set(*g);
  CHECK(subgroup_generated(*g, gens).order() == g->order());
  CHECK(small_generating_set(*cyclic_group(1)).empty());
}

TEST_CASE("budget and cap exhaustion") {
  auto a = vector_group(2, 1, 3);
  CHECK(code_of([&] { are_isomorphic(*a, *a, 2); }) == Errc::BudgetExceeded);
  CHECK(code_of([] { all_automorphisms(*vector_group(2, 1, 4)); }) == Errc::CapExceeded);
}
