#include <catch2/catch_amalgamated.hpp>

#include "holoforge/enumerate.hpp"
#include "holoforge/normal_forms.hpp"
#include "support.hpp"

using namespace holoforge;
using testsupport::code_of;

namespace {

RingSpec f2() { return RingSpec(2, 1); }
RingSpec f3() { return RingSpec(3, 1); }

Matrix abar() {
  return Matrix(f2(), 4, 4, {1, 1, 1, 0, 0, 1, 1, 1, 0, 1, 0, 1, 0, 0, 0, 1});
}

Matrix bbar() {
  return Matrix(f2(), 4, 4, {1, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1});
}

Polynomial ref_poly() { return Polynomial(f2(), {1, 1, 0, 1, 1}); }

}  // namespace

TEST_CASE("characteristic polynomials") {
  CHECK(charpoly(abar()) == ref_poly());
  CHECK(charpoly(Matrix::identity(f3(), 2)) == Polynomial(f3(), {1, 1, 1}));
  Matrix c = Matrix::companion(f2(), {1, 1});
  CHECK(charpoly(c) == Polynomial(f2(), {1, 1, 1}));
}

TEST_CASE("minimal polynomials") {
  CHECK(minpoly(abar()) == ref_poly());
  CHECK(minpoly(Matrix::identity(f2(), 3)) == Polynomial(f2(), {1, 1}));
  CHECK(minpoly(Matrix::identity(f3(), 2)) == Polynomial(f3(), {2, 1}));
  Matrix j3 = jordan_unipotent(f2(), {0, 0, 1});
  CHECK(minpoly(j3) == Polynomial(f2(), {1, 1, 1, 1}));
}

TEST_CASE("annihilation and divisibility") {
  for (const Matrix& a : all_matrices(f2(), 2, 2)) {
    CHECK(charpoly(a).evaluate(a).is_zero());
    CHECK(minpoly(a).evaluate(a).is_zero());
    CHECK((charpoly(a) % minpoly(a)).is_zero());
  }
  for (const Matrix& a : all_matrices(f3(), 2, 2)) {
    CHECK(charpoly(a).evaluate(a).is_zero());
    CHECK((charpoly(a) % minpoly(a)).is_zero());
  }
  auto g = testsupport::rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    Matrix a = testsupport::random_matrix(f2(), 4, 4, g);
    CHECK(charpoly(a).evaluate(a).is_zero());
    CHECK((charpoly(a) % minpoly(a)).is_zero());
    Matrix b = testsupport::random_matrix(f3(), 3, 3, g);
    CHECK(charpoly(b).evaluate(b).is_zero());
    CHECK((charpoly(b) % minpoly(b)).is_zero());
  }
}

TEST_CASE("invariant factor chains") {
  auto one = invariant_factors(abar());
  REQUIRE(one.size() == 1);
  CHECK(one[0] == ref_poly());

  auto id3 = invariant_factors(Matrix::identity(f2(), 3));
  REQUIRE(id3.size() == 3);
  for (const auto& f : id3) CHECK(f == Polynomial(f2(), {1, 1}));

  auto mixed = invariant_factors(jordan_unipotent(f2(), {1, 1}));
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0] == Polynomial(f2(), {1, 1}));
  CHECK(mixed[1] == Polynomial(f2(), {1, 0, 1}));

  auto g = testsupport::rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix a = testsupport::random_matrix(f3(), 4, 4, g);
    auto fac = invariant_factors(a);
    REQUIRE(!fac.empty());
    CHECK(fac.back() == minpoly(a));
    int total = 0;
    for (const auto& f : fac) total += f.degree();
    CHECK(total == 4);
  }
}

TEST_CASE("canonical form") {
  Matrix c = Matrix::companion(f2(), {1, 1});
  CHECK(rcf_form(c) == c);
  CHECK(rcf_form(abar()) == Matrix::companion(f2(), {1, 1, 0, 1}));

  auto g = testsupport::rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = testsupport::random_matrix(f3(), 3, 3, g);
    Matrix form = rcf_form(a);
    CHECK(rcf_form(form) == form);
  }
}

TEST_CASE("canonical form witnesses") {
  auto r = rcf(abar(), 1);
  CHECK(r.witness * abar() * inverse(r.witness) == r.form);

  auto g = testsupport::rng(77);
  for (u64 p : {u64{2}, u64{3}}) {
    RingSpec F(p, 1);
    for (int n = 1; n <= 4; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        Matrix a = testsupport::random_matrix(F, n, n, g);
        auto res = rcf(a, trial);
        CHECK(res.witness * a * inverse(res.witness) == res.form);
      }
  }
}

TEST_CASE("similarity") {
  CHECK(is_similar(abar(), bbar()));
  CHECK_FALSE(is_similar(jordan_unipotent(f2(), {0, 1}), Matrix::identity(f2(), 2)));
  CHECK_FALSE(is_similar(abar(), Matrix::identity(f2(), 3)));
  CHECK(code_of([] { is_similar(abar(), Matrix::identity(f3(), 4)); }) == Errc::RingMismatch);

  auto g = testsupport::rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix a = testsupport::random_matrix(f3(), 3, 3, g);
    Matrix x = testsupport::random_invertible(f3(), 3, g);
    CHECK(is_similar(a, x * a * inverse(x)));
  }
}

TEST_CASE("similarity is an equivalence") {
  auto g = testsupport::rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    Matrix a = testsupport::random_matrix(f2(), 3, 3, g);
    Matrix x = testsupport::random_invertible(f2(), 3, g);
    Matrix y = testsupport::random_invertible(f2(), 3, g);
    Matrix b = x * a * inverse(x);
    Matrix c = y * b * inverse(y);
    CHECK(is_similar(a, a));
    CHECK(is_similar(b, a));
    CHECK(is_similar(a, c));
  }
}

TEST_CASE("similarity witnesses") {
  Matrix w = similarity_witness(abar(), bbar(), 3);
  CHECK(w * abar() * inverse(w) == bbar());

  Matrix self = similarity_witness(abar(), abar());
  CHECK(self * abar() * inverse(self) == abar());

  CHECK(code_of([] { similarity_witness(jordan_unipotent(f2(), {0, 1}), Matrix::identity(f2(), 2)); }) ==
        Errc::NotSimilar);
}

TEST_CASE("regularity") {
  CHECK_FALSE(is_p_regular(abar()));
  CHECK(is_p_regular(Matrix::companion(f2(), {1, 1})));
  CHECK(is_p_regular(Matrix::identity(f2(), 3)));
  CHECK(is_p_regular(Matrix::identity(f3(), 2)));
  CHECK(code_of([] { is_p_regular(Matrix(f2(), 2, 2, {1, 0, 0, 0})); }) == Errc::NotInvertible);
}

TEST_CASE("power similarity matches regularity") {
  CHECK(frobenius_power_similar(Matrix::companion(f2(), {1, 1})));
  CHECK_FALSE(frobenius_power_similar(jordan_unipotent(f2(), {0, 1})));
  CHECK_FALSE(frobenius_power_similar(abar()));

  for (const Matrix& a : general_linear(f2(), 2)) CHECK(frobenius_power_similar(a) == is_p_regular(a));
  for (const Matrix& a : general_linear(f3(), 2)) CHECK(frobenius_power_similar(a) == is_p_regular(a));
}

TEST_CASE("regularity against multiplicative order") {
  for (const Matrix& a : general_linear(f2(), 2)) CHECK(is_p_regular(a) == (matrix_order(a) % 2 != 0));
  for (const Matrix& a : general_linear(f3(), 2)) CHECK(is_p_regular(a) == (matrix_order(a) % 3 != 0));
}

TEST_CASE("restriction to invariant subspaces") {
  Matrix a = abar();
  Matrix shifted = a - Matrix::identity(f2(), 4);
  auto im = image_basis(shifted);
  REQUIRE(im.size() == 3);
  Matrix restr = restriction(a, im);
  CHECK(restr.rows() == 3);

  std::vector<std::vector<u64>> full = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK(restriction(a, full) == a);

  Matrix j3 = jordan_unipotent(f2(), {0, 0, 1});
  Matrix eig = restriction(j3, {{1, 0, 0}});
  CHECK(eig == Matrix::identity(f2(), 1));

  CHECK(code_of([&] { restriction(j3, {{0, 0, 1}}); }) == Errc::NotInvariant);
  CHECK(code_of([&] { restriction(j3, {{1, 0, 0}, {1, 0, 0}}); }) == Errc::NotIndependent);
}

TEST_CASE("length plus image type determines similarity") {
  auto g = testsupport::rng(31);
  int hypothesis_hits = 0;
  for (int trial = 0; trial < 400; ++trial) {
    RingSpec F = (trial % 2) ? f3() : f2();
    int n = 2 + static_cast<int>(g() % 4);
    Matrix u = testsupport::random_matrix(F, n, n, g);
    Matrix v = (trial % 3 == 0) ? testsupport::random_matrix(F, n, n, g)
                                : [&] {
                                    Matrix x = testsupport::random_invertible(F, n, g);
                                    return x * u * inverse(x);
                                  }();
    Polynomial mu = minpoly(u), mv = minpoly(v);
    for (const auto& [q, mult] : factor(mu)) {
      if (!(mv % q).is_zero()) continue;
      auto imu = image_basis(q.evaluate(u));
      auto imv = image_basis(q.evaluate(v));
      if (imu.size() != imv.size()) continue;
      bool image_similar;
      if (imu.empty())
        image_similar = true;
      else
        image_similar = is_similar(restriction(u, imu), restriction(v, imv));
      if (!image_similar) continue;
      ++hypothesis_hits;
      CHECK(is_similar(u, v));
    }
  }
  CHECK(hypothesis_hits >= 200);
}

TEST_CASE("unipotent partitions") {
  CHECK(unipotent_partition(Matrix::identity(f2(), 3)) == std::vector<int>{3});
  CHECK(unipotent_partition(jordan_unipotent(f2(), {1, 0, 1})) == std::vector<int>{1, 0, 1});

  auto g = testsupport::rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    Matrix j = jordan_unipotent(f3(), {0, 2});
    Matrix x = testsupport::random_invertible(f3(), 4, g);
    CHECK(unipotent_partition(x * j * inverse(x)) == std::vector<int>{0, 2});
  }

  CHECK(code_of([] { unipotent_partition(abar()); }) == Errc::NotUnipotent);
  CHECK(code_of([] { unipotent_partition(Matrix::companion(f2(), {1, 1})); }) == Errc::NotUnipotent);
}

TEST_CASE("partition reconstruction") {
  auto g = testsupport::rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    RingSpec F = (trial % 2) ? f3() : f2();
    std::vector<int> mults(1 + g() % 3, 0);
    int n = 0;
    for (size_t i = 0; i < mults.size(); ++i) {
      mults[i] = static_cast<int>(g() % 3);
      n += static_cast<int>(i + 1) * mults[i];
    }
    while (mults.size() > 1 && mults.back() == 0) mults.pop_back();
    if (n == 0 || mults.back() == 0) continue;
    Matrix j = jordan_unipotent(F, mults);
    Matrix x = testsupport::random_invertible(F, n, g);
    Matrix a = x * j * inverse(x);
    auto part = unipotent_partition(a);
    CHECK(part == mults);
    int total = 0;
    for (size_t i = 0; i < part.size(); ++i) total += static_cast<int>(i + 1) * part[i];
    CHECK(total == n);
    CHECK(is_similar(jordan_unipotent(F, part), a));
  }
}
