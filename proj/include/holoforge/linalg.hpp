#pragma once

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "holoforge/errors.hpp"
#include "holoforge/matrix.hpp"
#include "holoforge/ring.hpp"

namespace holoforge {

/// Reduced row echelon form over a prime field; pivot columns optionally
/// reported.
inline Matrix rref(const Matrix& a, std::vector<int>* pivot_cols = nullptr) {
  require(a.ring().is_field(), Errc::NotField, "rref needs a prime field");
  const RingSpec& F = a.ring();
  Matrix w = a;
  if (pivot_cols) pivot_cols->clear();
  int r = 0;
  for (int c = 0; c < w.cols() && r < w.rows(); ++c) {
    int pivot = -1;
    for (int i = r; i < w.rows(); ++i)
      if (w.at(i, c)) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < w.cols(); ++j) std::swap(w.at(pivot, j), w.at(r, j));
    u64 s = F.inv(w.at(r, c));
    for (int j = 0; j < w.cols(); ++j) w.at(r, j) = F.mul(w.at(r, j), s);
    for (int i = 0; i < w.rows(); ++i) {
      if (i == r || !w.at(i, c)) continue;
      u64 f = w.at(i, c);
      for (int j = 0; j < w.cols(); ++j) w.at(i, j) = F.sub(w.at(i, j), F.mul(f, w.at(r, j)));
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return w;
}

inline int rank(const Matrix& a) {
  std::vector<int> pivots;
  rref(a, &pivots);
  return static_cast<int>(pivots.size());
}

/// Basis of the right kernel {x : a x = 0} over a prime field.
inline std::vector<std::vector<u64>> kernel_basis(const Matrix& a) {
  const RingSpec& F = a.ring();
  std::vector<int> pivots;
  Matrix r = rref(a, &pivots);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<u64>> out;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(a.cols(), 0);
    v[free] = 1;
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = F.neg(r.at(static_cast<int>(k), free));
    out.push_back(v);
  }
  return out;
}

/// Basis of the column space over a prime field, as vectors of length rows.
inline std::vector<std::vector<u64>> image_basis(const Matrix& a) {
  Matrix r = rref(a.transpose());
  std::vector<std::vector<u64>> out;
  for (int i = 0; i < r.rows(); ++i) {
    auto row = r.row(i);
    if (std::any_of(row.begin(), row.end(), [](u64 x) { return x != 0; })) out.push_back(row);
  }
  return out;
}

/// One solution of a x = b over a prime field, free variables set to zero.
inline std::optional<std::vector<u64>> solve(const Matrix& a, const std::vector<u64>& b) {
  require(static_cast<int>(b.size()) == a.rows(), Errc::DimensionMismatch, "solve shape mismatch");
  const RingSpec& F = a.ring();
  Matrix aug(F, a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i] % F.p;
  }
  std::vector<int> pivots;
  Matrix r = rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<u64> x(a.cols(), 0);
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = r.at(static_cast<int>(k), a.cols());
  return x;
}

/// Canonical echelon form of a row span over Z/p^mZ. Pivot entries are
/// powers of p; entries above a pivot p^v are reduced mod p^v; for every
/// pivot row with v > 0 the closure row p^(m-v) * row is part of the span
/// and gets processed too, so truncation to a trailing block of columns
/// keeps the generating property.
struct HowellForm {
  RingSpec ring{2, 1};
  int cols = 0;
  std::vector<std::vector<u64>> rows;
  std::vector<int> pivot_col;
  std::vector<unsigned> pivot_val;

  u64 span_size() const {
    u64 s = 1;
    for (unsigned v : pivot_val)
      for (unsigned i = v; i < ring.m; ++i) s *= ring.p;
    return s;
  }

  /// Residue of v after greedy reduction by the pivot rows.
  std::vector<u64> reduce(std::vector<u64> v) const {
    require(static_cast<int>(v.size()) == cols, Errc::DimensionMismatch, "reduce shape mismatch");
    for (u64& e : v) e %= ring.modulus;
    u64 ppow = 1;
    std::vector<u64> pv(ring.m + 1);
    for (unsigned i = 0; i <= ring.m; ++i) {
      pv[i] = ppow;
      ppow *= ring.p;
    }
    for (size_t k = 0; k < rows.size(); ++k) {
      u64 e = v[pivot_col[k]];
      if (!e) continue;
      u64 q = e / pv[pivot_val[k]];
      if (!q) continue;
      for (int j = 0; j < cols; ++j) v[j] = ring.sub(v[j], ring.mul(q, rows[k][j]));
    }
    return v;
  }

  bool contains(const std::vector<u64>& v) const {
    for (u64 e : reduce(v))
      if (e) return false;
    return true;
  }
};

inline HowellForm howell(RingSpec ring, std::vector<std::vector<u64>> gens, int cols) {
  for (auto& g : gens) {
    require(static_cast<int>(g.size()) == cols, Errc::DimensionMismatch, "generator length mismatch");
    for (u64& e : g) e %= ring.modulus;
  }
  std::vector<u64> pv(ring.m + 1);
  pv[0] = 1;
  for (unsigned i = 1; i <= ring.m; ++i) pv[i] = pv[i - 1] * ring.p;

  HowellForm h;
  h.ring = ring;
  h.cols = cols;
  std::vector<std::vector<u64>>& work = gens;
  for (int col = 0; col < cols; ++col) {
    int best = -1;
    unsigned bestv = ring.m;
    for (size_t i = 0; i < work.size(); ++i) {
      unsigned v = ring.valuation(work[i][col]);
      if (v < bestv) {
        bestv = v;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) continue;
    std::vector<u64> row = std::move(work[best]);
    work.erase(work.begin() + best);
    u64 unit = row[col] / pv[bestv];
    u64 s = ring.inv(unit);
    for (u64& e : row) e = ring.mul(e, s);
    for (auto& w : work) {
      u64 e = w[col];
      if (!e) continue;
      u64 q = e / pv[bestv];
      for (int j = 0; j < cols; ++j) w[j] = ring.sub(w[j], ring.mul(q, row[j]));
    }
    if (bestv > 0) {
      std::vector<u64> closure(cols);
      for (int j = 0; j < cols; ++j) closure[j] = ring.mul(pv[ring.m - bestv], row[j]);
      work.push_back(std::move(closure));
    }
    h.rows.push_back(std::move(row));
    h.pivot_col.push_back(col);
    h.pivot_val.push_back(bestv);
  }
  for (size_t i = 0; i < h.rows.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      u64 e = h.rows[j][h.pivot_col[i]];
      u64 q = e / pv[h.pivot_val[i]];
      if (!q) continue;
      for (int c = 0; c < cols; ++c) h.rows[j][c] = ring.sub(h.rows[j][c], ring.mul(q, h.rows[i][c]));
    }
  return h;
}

/// Orders of the cyclic factors of the span as an abelian group,
/// non-increasing p-powers, read off the filtration by p-scaling.
inline std::vector<u64> span_invariants(RingSpec ring, const std::vector<std::vector<u64>>& gens, int cols) {
  std::vector<unsigned> logsize(ring.m + 1, 0);
  for (unsigned j = 0; j <= ring.m; ++j) {
    u64 scale = 1;
    for (unsigned i = 0; i < j; ++i) scale *= ring.p;
    std::vector<std::vector<u64>> scaled = gens;
    for (auto& g : scaled)
      for (u64& e : g) e = ring.mul(e % ring.modulus, scale);
    u64 size = howell(ring, std::move(scaled), cols).span_size();
    unsigned lg = 0;
    while (size > 1) {
      size /= ring.p;
      ++lg;
    }
    logsize[j] = lg;
  }
  std::vector<u64> out;
  for (unsigned j = ring.m; j >= 1; --j) {
    unsigned t_above = logsize[j - 1] - logsize[j];
    unsigned t_below = (j < ring.m) ? logsize[j] - logsize[j + 1] : 0;
    u64 q = 1;
    for (unsigned i = 0; i < j; ++i) q *= ring.p;
    for (unsigned k = t_below; k < t_above; ++k) out.push_back(q);
  }
  return out;
}

/// Generators of the right kernel {x : a x = 0} over Z/p^mZ, read from the
/// canonical form of the transposed system with identity tag columns.
inline std::vector<std::vector<u64>> kernel_generators(const Matrix& a) {
  const RingSpec& R = a.ring();
  int k = a.rows(), n = a.cols();
  std::vector<std::vector<u64>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<u64> row(k + n, 0);
    for (int j = 0; j < k; ++j) row[j] = a.at(j, i);
    row[k + i] = 1;
    rows.push_back(std::move(row));
  }
  HowellForm h = howell(R, std::move(rows), k + n);
  std::vector<std::vector<u64>> out;
  for (size_t r = 0; r < h.rows.size(); ++r) {
    if (h.pivot_col[r] < k) continue;
    out.emplace_back(h.rows[r].begin() + k, h.rows[r].end());
  }
  return out;
}

/// Incremental linear dependence detector over a prime field. Vectors are
/// added one at a time; the first dependent one is reported with the
/// coefficients expressing it in terms of its predecessors.
class LinearDependence {
 public:
  LinearDependence(RingSpec field, int dim, int max_adds)
      : f_(field), dim_(dim), cap_(max_adds) {
    require(field.is_field(), Errc::NotField, "dependence tracking needs a prime field");
  }

  std::optional<std::vector<u64>> add(const std::vector<u64>& v) {
    require(static_cast<int>(v.size()) == dim_, Errc::DimensionMismatch, "vector length mismatch");
    require(count_ < cap_, Errc::CapExceeded, "dependence tracker capacity exhausted");
    std::vector<u64> left(v);
    for (u64& e : left) e %= f_.p;
    std::vector<u64> tag(cap_, 0);
    tag[count_] = 1;
    for (size_t r = 0; r < rows_.size(); ++r) {
      u64 e = left[pivot_[r]];
      if (!e) continue;
      for (int j = 0; j < dim_; ++j) left[j] = f_.sub(left[j], f_.mul(e, rows_[r][j]));
      for (int j = 0; j < cap_; ++j) tag[j] = f_.sub(tag[j], f_.mul(e, tags_[r][j]));
    }
    int p = -1;
    for (int j = 0; j < dim_; ++j)
      if (left[j]) {
        p = j;
        break;
      }
    if (p < 0) {
      std::vector<u64> coeffs(count_);
      for (int j = 0; j < count_; ++j) coeffs[j] = f_.neg(tag[j]);
      ++count_;
      return coeffs;
    }
    u64 s = f_.inv(left[p]);
    for (u64& e : left) e = f_.mul(e, s);
    for (u64& e : tag) e = f_.mul(e, s);
    rows_.push_back(std::move(left));
    tags_.push_back(std::move(tag));
    pivot_.push_back(p);
    ++count_;
    return std::nullopt;
  }

  int added() const { return count_; }
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  RingSpec f_;
  int dim_, cap_, count_ = 0;
  std::vector<std::vector<u64>> rows_, tags_;
  std::vector<int> pivot_;
};

}  // namespace holoforge
