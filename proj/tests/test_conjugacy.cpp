#include <catch2/catch_amalgamated.hpp>

#include "holoforge/conjugacy.hpp"
#include "holoforge/enumerate.hpp"
#include "support.hpp"

using namespace holoforge;
using testsupport::code_of;

namespace {

RingSpec f2() { return RingSpec(2, 1); }
RingSpec z8() { return RingSpec(2, 3); }

Matrix ring_a() {
  return Matrix(z8(), 4, 4, {3, -1, 1, -2, 0, 3, -3, 1, 0, 3, 4, 3, 2, 0, -2, 3});
}

Matrix ring_b() {
  return Matrix(z8(), 4, 4, {-1, -2, 2, 4, 0, 3, -3, 1, 0, 3, 4, 3, 1, 0, -2, 3});
}

}  // namespace

TEST_CASE("field conjugacy basics") {
  Matrix j(f2(), 2, 2, {1, 1, 0, 1});
  auto self = cyclic_conjugate_field(j, j);
  CHECK(self.verdict == Verdict::Conjugate);
  CHECK(self.exponent == 1);
  REQUIRE(self.witness.has_value());
  CHECK(verify_conjugacy_witness(j, j, *self.exponent, *self.witness));

  Matrix jt(f2(), 2, 2, {1, 0, 1, 1});
  auto transposed = cyclic_conjugate_field(j, jt);
  CHECK(transposed.verdict == Verdict::Conjugate);
  CHECK(verify_conjugacy_witness(j, jt, *transposed.exponent, *transposed.witness));

  auto distinct = cyclic_conjugate_field(j, Matrix::identity(f2(), 2));
  CHECK(distinct.verdict == Verdict::NotConjugate);
  REQUIRE(distinct.separating_invariant.has_value());

  auto trivial = cyclic_conjugate_field(Matrix::identity(f2(), 2), Matrix::identity(f2(), 2));
  CHECK(trivial.verdict == Verdict::Conjugate);
  CHECK(trivial.exponent == 1);
}

TEST_CASE("smallest exponent wins") {
  RingSpec F5(5, 1);
  Matrix b(F5, 2, 2, {2, 0, 0, 1});
  Matrix a(F5, 2, 2, {3, 0, 0, 1});
  auto d = cyclic_conjugate_field(a, b);
  CHECK(d.verdict == Verdict::Conjugate);
  CHECK(d.exponent == 3);
  CHECK(verify_conjugacy_witness(a, b, 3, *d.witness));
}

TEST_CASE("field conjugacy errors") {
  Matrix j(f2(), 2, 2, {1, 1, 0, 1});
  CHECK(code_of([&] { cyclic_conjugate_field(j, Matrix::identity(f2(), 3)); }) == Errc::SizeMismatch);
  CHECK(code_of([&] { cyclic_conjugate_field(j, Matrix(f2(), 2, 2, {1, 0, 0, 0})); }) == Errc::NotInvertible);
  CHECK(code_of([&] { cyclic_conjugate_field(j, Matrix::identity(RingSpec(3, 1), 2)); }) == Errc::RingMismatch);
  CHECK(code_of([&] { cyclic_conjugate_field(ring_a(), ring_a()); }) == Errc::NotField);
}

TEST_CASE("field conjugacy is symmetric") {
  auto gl22 = general_linear(f2(), 2);
  for (const Matrix& a : gl22)
    for (const Matrix& b : gl22)
      CHECK(cyclic_conjugate_field(a, b).verdict == cyclic_conjugate_field(b, a).verdict);

  auto g = testsupport::rng(311);
  RingSpec F3(3, 1);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix a = testsupport::random_invertible(F3, 2, g);
    Matrix b = testsupport::random_invertible(F3, 2, g);
    CHECK(cyclic_conjugate_field(a, b).verdict == cyclic_conjugate_field(b, a).verdict);
  }
}

TEST_CASE("planted subgroup conjugation is always found") {
  auto g = testsupport::rng(733);
  RingSpec F3(3, 1);
  for (int trial = 0; trial < 60; ++trial) {
    Matrix b = testsupport::random_invertible(F3, 3, g);
    u64 ob = matrix_order(b);
    u64 i = 1 + g() % ob;
    while (gcd_u64(i, ob) != 1) i = 1 + g() % ob;
    Matrix x = testsupport::random_invertible(F3, 3, g);
    Matrix a = inverse(x) * b.pow(i) * x;
    auto d = cyclic_conjugate_field(a, b);
    REQUIRE(d.verdict == Verdict::Conjugate);
    CHECK(verify_conjugacy_witness(a, b, *d.exponent, *d.witness));
  }
}

TEST_CASE("holomorph isomorphism decision over the field") {
  Matrix abar(f2(), 4, 4, {1, 1, 1, 0, 0, 1, 1, 1, 0, 1, 0, 1, 0, 0, 0, 1});
  Matrix bbar(f2(), 4, 4, {1, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1});
  CHECK(holomorph_isomorphic(abar, bbar));
  CHECK_FALSE(holomorph_isomorphic(Matrix(f2(), 2, 2, {1, 1, 0, 1}), Matrix::identity(f2(), 2)));
}

TEST_CASE("reference ring pair is refuted by determinants") {
  auto d = cyclic_conjugate_ring(ring_a(), ring_b());
  CHECK(d.verdict == Verdict::NotConjugate);
  REQUIRE(d.separating_invariant.has_value());
  CHECK(d.separating_invariant->find("determinant") != std::string::npos);
}

TEST_CASE("ring self conjugacy") {
  auto d = cyclic_conjugate_ring(ring_a(), ring_a());
  CHECK(d.verdict == Verdict::Conjugate);
  CHECK(d.exponent == 1);
  REQUIRE(d.witness.has_value());
  CHECK(*d.witness == Matrix::identity(z8(), 4));
}

TEST_CASE("planted ring conjugation is found within budget") {
  auto g = testsupport::rng(977);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix x = testsupport::random_invertible(z8(), 4, g);
    Matrix planted = x * ring_a() * inverse(x);
    auto d = cyclic_conjugate_ring(ring_a(), planted, 20000, trial);
    REQUIRE(d.verdict == Verdict::Conjugate);
    REQUIRE(d.witness.has_value());
    CHECK(is_invertible(*d.witness));
    CHECK(*d.witness * ring_a() == planted.pow(*d.exponent) * *d.witness);
    CHECK(gcd_u64(*d.exponent, matrix_order(planted)) == 1);
  }
}

TEST_CASE("ring procedure delegates for m = 1") {
  Matrix j(f2(), 2, 2, {1, 1, 0, 1});
  Matrix jt(f2(), 2, 2, {1, 0, 1, 1});
  auto d = cyclic_conjugate_ring(j, jt);
  CHECK(d.verdict == Verdict::Conjugate);
}

TEST_CASE("ring verdicts are consistent with residue verdicts") {
  auto g = testsupport::rng(1201);
  RingSpec Z4(2, 2);
  int conjugate_seen = 0;
  for (int trial = 0; trial < 80; ++trial) {
    Matrix a = testsupport::random_invertible(Z4, 2, g);
    Matrix b;
    if (trial % 2) {
      Matrix x = testsupport::random_invertible(Z4, 2, g);
      b = x * a * inverse(x);
    } else {
      b = testsupport::random_invertible(Z4, 2, g);
    }
    auto ring_d = cyclic_conjugate_ring(a, b, 5000, trial);
    auto field_d = cyclic_conjugate_field(reduce_mod_p(a), reduce_mod_p(b));
    if (ring_d.verdict == Verdict::Conjugate) {
      ++conjugate_seen;
      CHECK(field_d.verdict == Verdict::Conjugate);
      CHECK(verify_conjugacy_witness(a, b, *ring_d.exponent, *ring_d.witness));
    }
    if (field_d.verdict == Verdict::NotConjugate) CHECK(ring_d.verdict == Verdict::NotConjugate);
  }
  CHECK(conjugate_seen >= 30);
}

TEST_CASE("tiny budgets never produce false refutations") {
  auto g = testsupport::rng(4242);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix x = testsupport::random_invertible(z8(), 2, g);
    Matrix a = testsupport::random_invertible(z8(), 2, g);
    Matrix b = x * a * inverse(x);
    auto d = cyclic_conjugate_ring(a, b, 2, trial);
    CHECK(d.verdict != Verdict::NotConjugate);
    if (d.verdict == Verdict::Unknown) CHECK(d.budget_note.has_value());
    if (d.verdict == Verdict::Conjugate) CHECK(verify_conjugacy_witness(a, b, *d.exponent, *d.witness));
  }
}
