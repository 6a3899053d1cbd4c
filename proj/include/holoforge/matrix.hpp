#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <sstream>
#include <string>
#include <vector>

#include "holoforge/errors.hpp"
#include "holoforge/ring.hpp"

namespace holoforge {

/// Dense matrix over Z/p^mZ, row-major, entries always reduced.
class Matrix {
 public:
  Matrix() = default;

  Matrix(RingSpec ring, int rows, int cols)
      : ring_(ring), rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, 0) {
    require(rows >= 1 && cols >= 1, Errc::DimensionMismatch, "matrix dimensions must be positive");
  }

  Matrix(RingSpec ring, int rows, int cols, std::initializer_list<i64> entries) : Matrix(ring, rows, cols) {
    require(static_cast<int>(entries.size()) == rows * cols, Errc::DimensionMismatch, "entry count mismatch");
    size_t k = 0;
    for (i64 v : entries) e_[k++] = ring_.reduce(v);
  }

  static Matrix identity(RingSpec ring, int n) {
    Matrix r(ring, n, n);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1 % ring.modulus;
    return r;
  }

  static Matrix zero(RingSpec ring, int rows, int cols) { return Matrix(ring, rows, cols); }

  /// Companion matrix of a monic polynomial given by its coefficient list
  /// c0..c_{d-1} (low to high, without the leading 1).
  static Matrix companion(RingSpec ring, const std::vector<u64>& low_coeffs) {
    int d = static_cast<int>(low_coeffs.size());
    require(d >= 1, Errc::DimensionMismatch, "companion matrix needs degree >= 1");
    Matrix r(ring, d, d);
    for (int i = 1; i < d; ++i) r.at(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) r.at(i, d - 1) = ring.neg(low_coeffs[i] % ring.modulus);
    return r;
  }

  const RingSpec& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  u64& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  u64 at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<u64>& entries() const { return e_; }

  void set(int i, int j, i64 v) { at(i, j) = ring_.reduce(v); }

  bool operator==(const Matrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(ring_, rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = ring_.add(e_[k], o.e_[k]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(ring_, rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = ring_.sub(e_[k], o.e_[k]);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    require(ring_ == o.ring_, Errc::RingMismatch, "matrix product over different rings");
    require(cols_ == o.rows_, Errc::DimensionMismatch, "matrix product shape mismatch");
    Matrix r(ring_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        u64 a = at(i, k);
        if (!a) continue;
        for (int j = 0; j < o.cols_; ++j) r.at(i, j) = (r.at(i, j) + a * o.at(k, j)) % ring_.modulus;
      }
    return r;
  }

  Matrix scaled(u64 c) const {
    Matrix r(ring_, rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = ring_.mul(e_[k], c);
    return r;
  }

  Matrix transpose() const {
    Matrix r(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Matrix pow(u64 e) const {
    require(square(), Errc::NotSquare, "pow needs a square matrix");
    Matrix r = identity(ring_, rows_);
    Matrix b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  bool is_identity() const {
    if (!square()) return false;
    return *this == identity(ring_, rows_);
  }

  bool is_zero() const {
    for (u64 v : e_)
      if (v) return false;
    return true;
  }

  std::vector<u64> column(int j) const {
    std::vector<u64> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  std::vector<u64> row(int i) const {
    std::vector<u64> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }

  /// Matrix * column vector.
  std::vector<u64> apply(const std::vector<u64>& v) const {
    require(static_cast<int>(v.size()) == cols_, Errc::DimensionMismatch, "apply shape mismatch");
    std::vector<u64> r(rows_, 0);
    for (int i = 0; i < rows_; ++i) {
      u64 acc = 0;
      for (int j = 0; j < cols_; ++j) acc = (acc + at(i, j) * (v[j] % ring_.modulus)) % ring_.modulus;
      r[i] = acc;
    }
    return r;
  }

  /// Text format: first line "p m rows cols", then one line per row.
  std::string serialize() const {
    std::ostringstream os;
    os << ring_.p << ' ' << ring_.m << ' ' << rows_ << ' ' << cols_ << '\n';
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
      os << '\n';
    }
    return os.str();
  }

  static Matrix parse(std::istream& is);
  static Matrix parse(const std::string& text);

 private:
  void check_same_shape(const Matrix& o) const {
    require(ring_ == o.ring_, Errc::RingMismatch, "matrices over different rings");
    require(rows_ == o.rows_ && cols_ == o.cols_, Errc::DimensionMismatch, "matrix shape mismatch");
  }

  RingSpec ring_;
  int rows_ = 0, cols_ = 0;
  std::vector<u64> e_;
};

inline Matrix Matrix::parse(std::istream& is) {
  i64 p, m, rows, cols;
  if (!(is >> p >> m >> rows >> cols)) fail(Errc::ParseError, "matrix header must be: p m rows cols");
  require(p >= 2 && m >= 1 && rows >= 1 && cols >= 1, Errc::ParseError, "bad matrix header");
  RingSpec ring(static_cast<u64>(p), static_cast<unsigned>(m));
  Matrix r(ring, static_cast<int>(rows), static_cast<int>(cols));
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) {
      i64 v;
      if (!(is >> v)) fail(Errc::ParseError, "matrix entry missing at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      r.set(i, j, v);
    }
  return r;
}

inline Matrix Matrix::parse(const std::string& text) {
  std::istringstream is(text);
  return parse(is);
}

namespace detail {

/// Determinant by cofactor expansion, organised as DP over column subsets.
inline u64 det_cofactor(const Matrix& a) {
  const RingSpec& R = a.ring();
  int n = a.rows();
  std::vector<u64> dp(size_t{1} << n, 0);
  dp[0] = 1 % R.modulus;
  for (u64 mask = 1; mask < (u64{1} << n); ++mask) {
    int row = __builtin_popcountll(mask) - 1;
    u64 acc = 0;
    int idx = 0;
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      u64 term = R.mul(a.at(row, j), dp[mask ^ (u64{1} << j)]);
      acc = ((row + idx) % 2 == 0) ? R.add(acc, term) : R.sub(acc, term);
      ++idx;
    }
    dp[mask] = acc;
  }
  return dp[(u64{1} << n) - 1];
}

/// Bird's division-free determinant: n-1 rounds of X <- mu(X) * A.
inline u64 det_bird(const Matrix& a) {
  const RingSpec& R = a.ring();
  int n = a.rows();
  Matrix x = a;
  auto mu = [&](const Matrix& v) {
    Matrix r(R, n, n);
    u64 tail = 0;
    for (int i = n - 1; i >= 0; --i) {
      r.at(i, i) = R.neg(tail);
      tail = R.add(tail, v.at(i, i));
      for (int j = i + 1; j < n; ++j) r.at(i, j) = v.at(i, j);
    }
    return r;
  };
  for (int step = 0; step < n - 1; ++step) x = mu(x) * a;
  u64 d = x.at(0, 0);
  return (n % 2 == 0) ? R.neg(d) : d;
}

}  // namespace detail

inline u64 det(const Matrix& a) {
  require(a.square(), Errc::NotSquare, "determinant of a non-square matrix");
  return a.rows() <= 6 ? detail::det_cofactor(a) : detail::det_bird(a);
}

inline bool is_invertible(const Matrix& a) { return a.square() && a.ring().is_unit(det(a)); }

/// Gauss-Jordan inverse; valid over Z/p^mZ because an invertible matrix
/// always offers a unit pivot in every elimination column.
inline Matrix inverse(const Matrix& a) {
  require(a.square(), Errc::NotSquare, "inverse of a non-square matrix");
  const RingSpec& R = a.ring();
  int n = a.rows();
  Matrix w = a;
  Matrix inv = Matrix::identity(R, n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i)
      if (R.is_unit(w.at(i, col))) {
        pivot = i;
        break;
      }
    require(pivot >= 0, Errc::NotInvertible, "matrix is not invertible over " + R.str());
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(w.at(pivot, j), w.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    u64 s = R.inv(w.at(col, col));
    for (int j = 0; j < n; ++j) {
      w.at(col, j) = R.mul(w.at(col, j), s);
      inv.at(col, j) = R.mul(inv.at(col, j), s);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      u64 f = w.at(i, col);
      if (!f) continue;
      for (int j = 0; j < n; ++j) {
        w.at(i, j) = R.sub(w.at(i, j), R.mul(f, w.at(col, j)));
        inv.at(i, j) = R.sub(inv.at(i, j), R.mul(f, inv.at(col, j)));
      }
    }
  }
  return inv;
}

constexpr u64 kDefaultOrderCap = 1000000;

/// Least k >= 1 with a^k = I, by repeated multiplication.
inline u64 matrix_order(const Matrix& a, u64 cap = kDefaultOrderCap) {
  require(a.square(), Errc::NotSquare, "order of a non-square matrix");
  require(is_invertible(a), Errc::NotInvertible, "order of a singular matrix");
  Matrix id = Matrix::identity(a.ring(), a.rows());
  Matrix acc = a;
  for (u64 k = 1; k <= cap; ++k) {
    if (acc == id) return k;
    acc = acc * a;
  }
  fail(Errc::CapExceeded, "matrix order exceeds cap " + std::to_string(cap));
}

/// Entrywise projection Z/p^mZ -> F_p.
inline Matrix reduce_mod_p(const Matrix& a) {
  RingSpec field(a.ring().p, 1);
  Matrix r(field, a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) % field.p;
  return r;
}

/// Block-diagonal assembly.
inline Matrix block_diag(const std::vector<Matrix>& blocks) {
  require(!blocks.empty(), Errc::DimensionMismatch, "block_diag needs at least one block");
  int n = 0;
  for (const Matrix& b : blocks) {
    require(b.square(), Errc::NotSquare, "block_diag blocks must be square");
    require(b.ring() == blocks.front().ring(), Errc::RingMismatch, "block_diag ring mismatch");
    n += b.rows();
  }
  Matrix r(blocks.front().ring(), n, n);
  int off = 0;
  for (const Matrix& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) r.at(off + i, off + j) = b.at(i, j);
    off += b.rows();
  }
  return r;
}

struct MatrixHash {
  size_t operator()(const Matrix& a) const {
    size_t h = std::hash<int>()(a.rows()) * 31 + a.cols();
    for (u64 v : a.entries()) h = h * 1099511628211ULL + v;
    return h;
  }
};

}  // namespace holoforge
