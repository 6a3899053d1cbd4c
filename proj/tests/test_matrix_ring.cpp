#include <catch2/catch_amalgamated.hpp>

#include "holoforge/matrix.hpp"
#include "support.hpp"

using namespace holoforge;
using testsupport::code_of;

namespace {

RingSpec z8() { return RingSpec(2, 3); }

Matrix mat_a() {
  return Matrix(z8(), 4, 4, {3, -1, 1, -2, 0, 3, -3, 1, 0, 3, 4, 3, 2, 0, -2, 3});
}

Matrix mat_b() {
  return Matrix(z8(), 4, 4, {-1, -2, 2, 4, 0, 3, -3, 1, 0, 3, 4, 3, 1, 0, -2, 3});
}

}  // namespace

TEST_CASE("residue arithmetic over Z/8Z") {
  RingSpec R = z8();
  CHECK(R.modulus == 8);
  CHECK(R.reduce(-1) == 7);
  CHECK(R.reduce(-9) == 7);
  CHECK(R.add(5, 6) == 3);
  CHECK(R.mul(3, 3) == 1);
  CHECK(R.inv(3) == 3);
  CHECK(R.inv(5) == 5);
  CHECK(R.pow(3, 2) == 1);
  CHECK(R.is_unit(7));
  CHECK_FALSE(R.is_unit(6));
  CHECK(R.valuation(4) == 2);
  CHECK(R.valuation(6) == 1);
  CHECK(R.valuation(0) == 3);
  CHECK(R.signed_rep(7) == -1);
  CHECK(R.signed_rep(3) == 3);
}

TEST_CASE("ring spec validation") {
  CHECK(code_of([] { RingSpec(6, 1); }) == Errc::NotField);
  CHECK(code_of([] { RingSpec(2, 31); }) == Errc::CapExceeded);
  CHECK(RingSpec(3, 1).is_field());
  CHECK_FALSE(z8().is_field());
}

TEST_CASE("reference matrix powers over Z/8Z") {
  Matrix a = mat_a();
  Matrix a2 = a * a;
  CHECK(a2.row(0) == std::vector<u64>{5, 5, 6, 6});
  Matrix a3 = a2 * a;
  CHECK(a3.row(0) == std::vector<u64>{3, 4, 2, 7});
  Matrix a6 = a.pow(6);
  CHECK(a6 == Matrix(z8(), 4, 4, {3, 0, -2, 4, 4, 1, 4, 4, 4, 0, -3, -2, 4, 0, 4, -1}));
  Matrix a12 = a.pow(12);
  Matrix expect12 = Matrix::identity(z8(), 4);
  expect12.set(0, 3, 4);
  CHECK(a12 == expect12);
  CHECK(a.pow(0) == Matrix::identity(z8(), 4));
  CHECK(a.pow(24) == Matrix::identity(z8(), 4));
}

TEST_CASE("multiplicative orders") {
  CHECK(matrix_order(mat_a()) == 24);
  CHECK(matrix_order(reduce_mod_p(mat_a())) == 6);
  CHECK(matrix_order(Matrix::identity(z8(), 4)) == 1);
  CHECK(code_of([] { matrix_order(mat_a(), 10); }) == Errc::CapExceeded);
}

TEST_CASE("determinants") {
  CHECK(det(mat_a()) == 7);
  CHECK(det(mat_b()) == 3);
  CHECK(det(Matrix::identity(z8(), 4)) == 1);
  Matrix d(z8(), 2, 2, {2, 0, 0, 1});
  CHECK(det(d) == 2);
}

TEST_CASE("division-free determinant agrees with cofactor expansion") {
  auto g = testsupport::rng(20260823);
  for (RingSpec R : {RingSpec(2, 3), RingSpec(3, 2), RingSpec(5, 1)}) {
    for (int trial = 0; trial < 25; ++trial) {
      Matrix a = testsupport::random_matrix(R, 7, 7, g);
      CHECK(detail::det_bird(a) == detail::det_cofactor(a));
    }
  }
}

TEST_CASE("inverse by elimination with unit pivots") {
  Matrix a = mat_a();
  CHECK(inverse(a) * a == Matrix::identity(z8(), 4));
  CHECK(a * inverse(a) == Matrix::identity(z8(), 4));

  auto g = testsupport::rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix r = testsupport::random_invertible(RingSpec(3, 2), 3, g);
    CHECK(inverse(r) * r == Matrix::identity(RingSpec(3, 2), 3));
  }

  Matrix d(z8(), 2, 2, {2, 0, 0, 1});
  CHECK(code_of([&] { inverse(d); }) == Errc::NotInvertible);
  CHECK_FALSE(is_invertible(d));
}

TEST_CASE("projection to the residue field") {
  Matrix abar = reduce_mod_p(mat_a());
  CHECK(abar.ring().modulus == 2);
  CHECK(abar.row(0) == std::vector<u64>{1, 1, 1, 0});
  CHECK(matrix_order(abar) == 6);
}

TEST_CASE("vector action") {
  Matrix a = mat_a();
  std::vector<u64> x = {7, 0, 0, 1};
  Matrix a12 = a.pow(12);
  std::vector<u64> ax = a12.apply(x);
  RingSpec R = z8();
  std::vector<u64> sum(4);
  for (int i = 0; i < 4; ++i) sum[i] = R.add(ax[i], x[i]);
  CHECK(sum == std::vector<u64>{2, 0, 0, 2});
}

TEST_CASE("companion matrices") {
  RingSpec F2(2, 1);
  Matrix c = Matrix::companion(F2, {1, 1});
  CHECK(c == Matrix(F2, 2, 2, {0, 1, 1, 1}));
  CHECK(matrix_order(c) == 3);
}

TEST_CASE("matrix text format") {
  Matrix a = mat_a();
  Matrix back = Matrix::parse(a.serialize());
  CHECK(back == a);

  Matrix neg = Matrix::parse("2 3 2 2\n-1 -2\n9 10\n");
  CHECK(neg == Matrix(z8(), 2, 2, {7, 6, 1, 2}));

  CHECK(code_of([] { Matrix::parse("2 3 2"); }) == Errc::ParseError);
  CHECK(code_of([] { Matrix::parse("2 3 2 2\n1 2 3"); }) == Errc::ParseError);
  CHECK(code_of([] { Matrix::parse("4 1 2 2\n1 0\n0 1\n"); }) == Errc::NotField);
}

TEST_CASE("block assembly") {
  RingSpec F3(3, 1);
  Matrix a(F3, 1, 1, {2});
  Matrix b(F3, 2, 2, {0, 1, 2, 0});
  Matrix d = block_diag({a, b});
  CHECK(d == Matrix(F3, 3, 3, {2, 0, 0, 0, 0, 1, 0, 2, 0}));
}
