#pragma once

#include <vector>

#include "holoforge/matrix.hpp"
#include "holoforge/ring.hpp"

namespace holoforge {

/// Mixed-radix decode of idx into a length-n vector over the ring.
inline std::vector<u64> vector_from_index(RingSpec ring, int n, u64 idx) {
  std::vector<u64> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = idx % ring.modulus;
    idx /= ring.modulus;
  }
  return v;
}

inline u64 vector_to_index(RingSpec ring, const std::vector<u64>& v) {
  u64 idx = 0;
  for (size_t i = v.size(); i-- > 0;) idx = idx * ring.modulus + (v[i] % ring.modulus);
  return idx;
}

inline std::vector<std::vector<u64>> all_vectors(RingSpec ring, int n) {
  u64 count = 1;
  for (int i = 0; i < n; ++i) count *= ring.modulus;
  std::vector<std::vector<u64>> out;
  out.reserve(count);
  for (u64 idx = 0; idx < count; ++idx) out.push_back(vector_from_index(ring, n, idx));
  return out;
}

inline std::vector<Matrix> all_matrices(RingSpec ring, int rows, int cols) {
  u64 count = 1;
  for (int i = 0; i < rows * cols; ++i) count *= ring.modulus;
  std::vector<Matrix> out;
  out.reserve(count);
  for (u64 idx = 0; idx < count; ++idx) {
    Matrix m(ring, rows, cols);
    u64 c = idx;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        m.at(i, j) = c % ring.modulus;
        c /= ring.modulus;
      }
    out.push_back(std::move(m));
  }
  return out;
}

/// All invertible n x n matrices over the ring, in enumeration order.
inline std::vector<Matrix> general_linear(RingSpec ring, int n) {
  std::vector<Matrix> out;
  for (Matrix& m : all_matrices(ring, n, n))
    if (is_invertible(m)) out.push_back(std::move(m));
  return out;
}

}  // namespace holoforge
