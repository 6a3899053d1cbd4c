#pragma once

#include <random>
#include <vector>

#include "holoforge/errors.hpp"
#include "holoforge/linalg.hpp"
#include "holoforge/matrix.hpp"
#include "holoforge/poly.hpp"

namespace holoforge {

/// Characteristic polynomial det(XI - a), expanded over column subsets so
/// no division happens in F_p[X].
inline Polynomial charpoly(const Matrix& a) {
  require(a.square(), Errc::NotSquare, "charpoly needs a square matrix");
  require(a.ring().is_field(), Errc::NotField, "charpoly needs a prime field");
  const RingSpec& F = a.ring();
  int n = a.rows();
  auto entry = [&](int i, int j) {
    if (i == j) return Polynomial(F, {static_cast<i64>(F.neg(a.at(i, j))), 1});
    return Polynomial::constant(F, static_cast<i64>(F.neg(a.at(i, j))));
  };
  std::vector<Polynomial> dp(size_t{1} << n, Polynomial(F));
  dp[0] = Polynomial::constant(F, 1);
  for (u64 mask = 1; mask < (u64{1} << n); ++mask) {
    int row = __builtin_popcountll(mask) - 1;
    Polynomial acc(F);
    int idx = 0;
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      Polynomial term = entry(row, j) * dp[mask ^ (u64{1} << j)];
      acc = ((row + idx) % 2 == 0) ? acc + term : acc - term;
      ++idx;
    }
    dp[mask] = acc;
  }
  return dp[(u64{1} << n) - 1];
}

/// Minimal polynomial from the first linear dependence among I, a, a^2, ...
inline Polynomial minpoly(const Matrix& a) {
  require(a.square(), Errc::NotSquare, "minpoly needs a square matrix");
  require(a.ring().is_field(), Errc::NotField, "minpoly needs a prime field");
  const RingSpec& F = a.ring();
  int n = a.rows();
  LinearDependence dep(F, n * n, n + 1);
  Matrix pw = Matrix::identity(F, n);
  for (int k = 0; k <= n; ++k) {
    if (auto coeffs = dep.add(pw.entries())) {
      std::vector<i64> low(k + 1);
      for (int j = 0; j < k; ++j) low[j] = static_cast<i64>(F.neg((*coeffs)[j]));
      low[k] = 1;
      return Polynomial(F, low);
    }
    pw = pw * a;
  }
  fail(Errc::Internal, "no annihilator of degree <= n found");
}

/// Invariant factors f_1 | ... | f_k in ascending divisibility order,
/// recovered from kernel dimensions of powers of each irreducible factor
/// of the characteristic polynomial evaluated at a.
inline std::vector<Polynomial> invariant_factors(const Matrix& a) {
  const RingSpec& F = a.ring();
  int n = a.rows();
  Polynomial chi = charpoly(a);
  auto facs = factor(chi);

  // lambda[i] = exponent of q in the (i+1)-th largest invariant factor.
  std::vector<std::pair<Polynomial, std::vector<int>>> shapes;
  size_t k = 0;
  for (const auto& [q, mult] : facs) {
    Matrix qa = q.evaluate(a);
    std::vector<int> ker_dim{0};
    Matrix pw = Matrix::identity(F, n);
    for (int j = 1; j <= mult; ++j) {
      pw = pw * qa;
      ker_dim.push_back(n - rank(pw));
    }
    std::vector<int> blocks;
    for (int j = 1; j <= mult; ++j) blocks.push_back((ker_dim[j] - ker_dim[j - 1]) / q.degree());
    std::vector<int> lambda;
    for (int i = 1; i <= (blocks.empty() ? 0 : blocks[0]); ++i) {
      int cnt = 0;
      for (int b : blocks)
        if (b >= i) ++cnt;
      lambda.push_back(cnt);
    }
    k = std::max(k, lambda.size());
    shapes.emplace_back(q, std::move(lambda));
  }

  std::vector<Polynomial> out(k, Polynomial::constant(F, 1));
  for (const auto& [q, lambda] : shapes)
    for (size_t i = 0; i < lambda.size(); ++i)
      out[k - 1 - i] = out[k - 1 - i] * q.pow(static_cast<u64>(lambda[i]));

  Polynomial prod = Polynomial::constant(F, 1);
  for (size_t i = 0; i < out.size(); ++i) {
    prod = prod * out[i];
    if (i + 1 < out.size()) require((out[i + 1] % out[i]).is_zero(), Errc::Internal, "divisibility chain broken");
  }
  require(prod == chi, Errc::Internal, "invariant factor product disagrees with charpoly");
  return out;
}

inline Matrix rcf_form(const Matrix& a) {
  auto factors = invariant_factors(a);
  std::vector<Matrix> blocks;
  for (const Polynomial& f : factors) {
    std::vector<u64> low(f.degree());
    for (int i = 0; i < f.degree(); ++i) low[i] = f.coeff(i);
    blocks.push_back(Matrix::companion(a.ring(), low));
  }
  return block_diag(blocks);
}

/// Invertible X with X * a * X^{-1} = target, sampled from the solution
/// module of the intertwining system X a = target X; deterministic per seed.
inline Matrix conjugating_witness(const Matrix& a, const Matrix& target, u64 seed = 0, int tries = 4000) {
  const RingSpec& F = a.ring();
  int n = a.rows();
  Matrix sys(F, n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int row = i * n + j;
      for (int k = 0; k < n; ++k) {
        sys.at(row, i * n + k) = F.add(sys.at(row, i * n + k), a.at(k, j));
        sys.at(row, k * n + j) = F.sub(sys.at(row, k * n + j), target.at(i, k));
      }
    }
  auto basis = kernel_basis(sys);
  require(!basis.empty(), Errc::NotSimilar, "no intertwiner exists");
  std::mt19937_64 g(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  std::uniform_int_distribution<u64> d(0, F.p - 1);
  for (int t = 0; t < tries; ++t) {
    Matrix x(F, n, n);
    for (const auto& v : basis) {
      u64 c = d(g);
      if (!c) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x.at(i, j) = F.add(x.at(i, j), F.mul(c, v[i * n + j]));
    }
    if (!is_invertible(x)) continue;
    require(x * a == target * x, Errc::Internal, "sampled intertwiner fails verification");
    return x;
  }
  fail(Errc::NotSimilar, "no invertible intertwiner found in " + std::to_string(tries) + " samples");
}

struct RcfResult {
  Matrix form;
  Matrix witness;
};

/// Canonical form plus verified conjugator witness * a * witness^{-1} = form.
inline RcfResult rcf(const Matrix& a, u64 seed = 0) {
  Matrix c = rcf_form(a);
  Matrix x = conjugating_witness(a, c, seed);
  require(x * a * inverse(x) == c, Errc::Internal, "canonical form witness fails verification");
  return {c, x};
}

inline bool is_similar(const Matrix& a, const Matrix& b) {
  require(a.square() && b.square(), Errc::NotSquare, "similarity needs square matrices");
  require(a.ring() == b.ring(), Errc::RingMismatch, "similarity over different rings");
  require(a.ring().is_field(), Errc::NotField, "similarity test needs a prime field");
  if (a.rows() != b.rows()) return false;
  return invariant_factors(a) == invariant_factors(b);
}

/// Invertible X with X * a * X^{-1} = b, composed through the shared
/// canonical form; verified before returning.
inline Matrix similarity_witness(const Matrix& a, const Matrix& b, u64 seed = 0) {
  require(is_similar(a, b), Errc::NotSimilar, "matrices are not similar");
  Matrix xa = rcf(a, seed).witness;
  Matrix xb = rcf(b, seed + 1).witness;
  Matrix w = inverse(xb) * xa;
  require(w * a * inverse(w) == b, Errc::Internal, "composed witness fails verification");
  return w;
}

inline bool is_p_regular(const Matrix& a) {
  require(is_invertible(a), Errc::NotInvertible, "regularity is defined for invertible matrices");
  return is_squarefree(minpoly(a));
}

inline bool frobenius_power_similar(const Matrix& a) {
  require(is_invertible(a), Errc::NotInvertible, "power similarity is defined for invertible matrices");
  return is_similar(a, a.pow(a.ring().p));
}

/// Matrix of a restricted to an invariant subspace, in the coordinates of
/// the given basis.
inline Matrix restriction(const Matrix& a, const std::vector<std::vector<u64>>& basis) {
  const RingSpec& F = a.ring();
  require(F.is_field(), Errc::NotField, "restriction needs a prime field");
  int n = a.rows(), d = static_cast<int>(basis.size());
  require(d >= 1, Errc::NotIndependent, "restriction needs a nonempty basis");
  Matrix cols(F, n, d);
  for (int j = 0; j < d; ++j) {
    require(static_cast<int>(basis[j].size()) == n, Errc::DimensionMismatch, "basis vector length mismatch");
    for (int i = 0; i < n; ++i) cols.at(i, j) = basis[j][i] % F.p;
  }
  require(rank(cols) == d, Errc::NotIndependent, "basis vectors are dependent");
  Matrix out(F, d, d);
  for (int j = 0; j < d; ++j) {
    auto image = a.apply(basis[j]);
    auto coords = solve(cols, image);
    require(coords.has_value(), Errc::NotInvariant, "subspace is not invariant");
    for (int i = 0; i < d; ++i) out.at(i, j) = (*coords)[i];
  }
  return out;
}

/// Jordan block multiplicities e_1..e_m of a unipotent matrix, solved from
/// the rank sequence of powers of a - 1.
inline std::vector<int> unipotent_partition(const Matrix& a) {
  require(a.square(), Errc::NotSquare, "partition needs a square matrix");
  require(a.ring().is_field(), Errc::NotField, "partition needs a prime field");
  const RingSpec& F = a.ring();
  int n = a.rows();
  Matrix u = a - Matrix::identity(F, n);
  std::vector<int> r{n};
  Matrix pw = Matrix::identity(F, n);
  for (int j = 1; j <= n; ++j) {
    pw = pw * u;
    r.push_back(rank(pw));
    if (r.back() == 0) break;
  }
  require(r.back() == 0, Errc::NotUnipotent, "matrix is not unipotent");
  int m = static_cast<int>(r.size()) - 1;
  auto rk = [&](int j) { return j < static_cast<int>(r.size()) ? r[j] : 0; };
  std::vector<int> e(m);
  for (int i = 1; i <= m; ++i) e[i - 1] = rk(i - 1) - 2 * rk(i) + rk(i + 1);
  return e;
}

/// Block-diagonal unipotent Jordan matrix with the given multiplicities.
inline Matrix jordan_unipotent(RingSpec field, const std::vector<int>& mults) {
  std::vector<Matrix> blocks;
  for (size_t size = 1; size <= mults.size(); ++size)
    for (int c = 0; c < mults[size - 1]; ++c) {
      Matrix j(field, static_cast<int>(size), static_cast<int>(size));
      for (int i = 0; i < static_cast<int>(size); ++i) {
        j.at(i, i) = 1;
        if (i + 1 < static_cast<int>(size)) j.at(i, i + 1) = 1;
      }
      blocks.push_back(j);
    }
  return block_diag(blocks);
}

}  // namespace holoforge
