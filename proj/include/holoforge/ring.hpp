#pragma once

#include <cstdint>
#include <string>

#include "holoforge/errors.hpp"

namespace holoforge {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Coefficient ring Z/p^mZ. A field exactly when m == 1. Residues are kept
/// reduced into [0, p^m); p^m must stay below 2^31 so that products of two
/// residues fit in a u64 without overflow.
struct RingSpec {
  u64 p = 2;
  unsigned m = 1;
  u64 modulus = 2;  // p^m

  RingSpec() = default;

  RingSpec(u64 prime, unsigned exponent) : p(prime), m(exponent) {
    require(exponent >= 1, Errc::ParseError, "ring exponent must be >= 1");
    require(is_prime(prime), Errc::NotField, "ring modulus base " + std::to_string(prime) + " is not prime");
    modulus = 1;
    for (unsigned i = 0; i < m; ++i) {
      modulus *= p;
      require(modulus < (u64{1} << 31), Errc::CapExceeded, "p^m exceeds 2^31");
    }
  }

  static bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  bool is_field() const { return m == 1; }
  bool operator==(const RingSpec& o) const { return p == o.p && m == o.m; }
  bool operator!=(const RingSpec& o) const { return !(*this == o); }

  u64 reduce(i64 x) const {
    i64 r = x % static_cast<i64>(modulus);
    if (r < 0) r += static_cast<i64>(modulus);
    return static_cast<u64>(r);
  }

  u64 add(u64 a, u64 b) const { return (a + b) % modulus; }
  u64 sub(u64 a, u64 b) const { return (a + modulus - b % modulus) % modulus; }
  u64 mul(u64 a, u64 b) const { return (a * b) % modulus; }
  u64 neg(u64 a) const { return a == 0 ? 0 : modulus - a; }

  u64 pow(u64 a, u64 e) const {
    u64 r = 1 % modulus;
    a %= modulus;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  bool is_unit(u64 a) const { return a % p != 0; }

  /// p-adic valuation of a residue; the zero residue gets valuation m.
  unsigned valuation(u64 a) const {
    if (a % modulus == 0) return m;
    unsigned v = 0;
    a %= modulus;
    while (a % p == 0) {
      a /= p;
      ++v;
    }
    return v;
  }

  /// Inverse of a unit, via extended Euclid against p^m.
  u64 inv(u64 a) const {
    a %= modulus;
    require(is_unit(a), Errc::NotInvertible, "residue " + std::to_string(a) + " is not a unit mod " + std::to_string(modulus));
    i64 old_r = static_cast<i64>(modulus), r = static_cast<i64>(a);
    i64 old_s = 0, s = 1;
    while (r != 0) {
      i64 q = old_r / r;
      i64 t = old_r - q * r;
      old_r = r;
      r = t;
      t = old_s - q * s;
      old_s = s;
      s = t;
    }
    return reduce(old_s);
  }

  /// Signed representative in (-p^m/2, p^m/2]; display helper only.
  i64 signed_rep(u64 a) const {
    a %= modulus;
    return (a * 2 > modulus) ? static_cast<i64>(a) - static_cast<i64>(modulus) : static_cast<i64>(a);
  }

  std::string str() const { return "Z/" + std::to_string(p) + "^" + std::to_string(m) + "Z"; }
};

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace holoforge
