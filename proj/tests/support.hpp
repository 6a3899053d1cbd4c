#pragma once

#include <random>

#include "holoforge/errors.hpp"
#include "holoforge/matrix.hpp"

namespace testsupport {

using holoforge::Errc;
using holoforge::Matrix;
using holoforge::RingSpec;
using holoforge::u64;

/// Runs f, which must throw holoforge::Error, and returns its code.
template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const holoforge::Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

inline std::mt19937_64 rng(u64 seed) { return std::mt19937_64(seed); }

inline Matrix random_matrix(RingSpec ring, int rows, int cols, std::mt19937_64& g) {
  Matrix a(ring, rows, cols);
  std::uniform_int_distribution<u64> d(0, ring.modulus - 1);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a.at(i, j) = d(g);
  return a;
}

inline Matrix random_invertible(RingSpec ring, int n, std::mt19937_64& g) {
  while (true) {
    Matrix a = random_matrix(ring, n, n, g);
    if (holoforge::is_invertible(a)) return a;
  }
}

}  // namespace testsupport
