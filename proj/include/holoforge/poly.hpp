#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "holoforge/errors.hpp"
#include "holoforge/matrix.hpp"
#include "holoforge/ring.hpp"

namespace holoforge {

/// Polynomial over a prime field F_p, coefficients stored low to high,
/// trailing zeros stripped; the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(RingSpec field) : f_(field) {
    require(field.is_field(), Errc::NotField, "polynomials are supported over prime fields only");
  }

  Polynomial(RingSpec field, std::vector<i64> low_to_high) : Polynomial(field) {
    c_.reserve(low_to_high.size());
    for (i64 v : low_to_high) c_.push_back(f_.reduce(v));
    trim();
  }

  static Polynomial x(RingSpec field) { return Polynomial(field, {0, 1}); }
  static Polynomial constant(RingSpec field, i64 c) { return Polynomial(field, {c}); }

  const RingSpec& field() const { return f_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  u64 coeff(int i) const { return (i >= 0 && i <= degree()) ? c_[i] : 0; }
  u64 lead() const {
    require(!is_zero(), Errc::ZeroPolynomial, "leading coefficient of the zero polynomial");
    return c_.back();
  }
  const std::vector<u64>& coeffs() const { return c_; }

  bool operator==(const Polynomial& o) const { return f_ == o.f_ && c_ == o.c_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Ordering for canonical factor lists: by degree, then coefficients
  /// from the highest power down.
  bool operator<(const Polynomial& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (int i = degree(); i >= 0; --i)
      if (coeff(i) != o.coeff(i)) return coeff(i) < o.coeff(i);
    return false;
  }

  Polynomial operator+(const Polynomial& o) const {
    check_field(o);
    Polynomial r(f_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = f_.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    r.trim();
    return r;
  }

  Polynomial operator-(const Polynomial& o) const {
    check_field(o);
    Polynomial r(f_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = f_.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    r.trim();
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    check_field(o);
    if (is_zero() || o.is_zero()) return Polynomial(f_);
    Polynomial r(f_);
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i]) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] = (r.c_[i + j] + c_[i] * o.c_[j]) % f_.p;
    }
    r.trim();
    return r;
  }

  Polynomial scaled(u64 s) const {
    Polynomial r(f_);
    r.c_ = c_;
    for (u64& v : r.c_) v = f_.mul(v, s);
    r.trim();
    return r;
  }

  Polynomial monic() const {
    require(!is_zero(), Errc::ZeroPolynomial, "monic form of the zero polynomial");
    return scaled(f_.inv(c_.back()));
  }

  Polynomial pow(u64 e) const {
    Polynomial r = constant(f_, 1);
    Polynomial b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// Quotient and remainder; the divisor must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    a.check_field(b);
    require(!b.is_zero(), Errc::ZeroPolynomial, "division by the zero polynomial");
    Polynomial q(a.f_), r = a;
    u64 lead_inv = a.f_.inv(b.c_.back());
    int db = b.degree();
    if (r.degree() >= db) q.c_.assign(r.degree() - db + 1, 0);
    while (r.degree() >= db) {
      int shift = r.degree() - db;
      u64 factor = a.f_.mul(r.c_.back(), lead_inv);
      q.c_[shift] = factor;
      for (int i = 0; i <= db; ++i)
        r.c_[shift + i] = a.f_.sub(r.c_[shift + i], a.f_.mul(factor, b.coeff(i)));
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  Polynomial operator/(const Polynomial& o) const { return divmod(*this, o).first; }
  Polynomial operator%(const Polynomial& o) const { return divmod(*this, o).second; }

  u64 evaluate(u64 at) const {
    u64 acc = 0, x = at % f_.p;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % f_.p;
    return acc;
  }

  /// Horner evaluation at a square matrix over the same field.
  Matrix evaluate(const Matrix& a) const {
    require(a.square(), Errc::NotSquare, "polynomial evaluation needs a square matrix");
    require(a.ring() == f_, Errc::RingMismatch, "matrix ring differs from coefficient field");
    Matrix acc = Matrix::zero(f_, a.rows(), a.rows());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * a;
      for (int i = 0; i < a.rows(); ++i) acc.at(i, i) = f_.add(acc.at(i, i), *it);
    }
    return acc;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      u64 c = c_[i];
      if (!c) continue;
      if (!s.empty()) s += "+";
      if (i == 0 || c != 1) s += std::to_string(c);
      if (i >= 1) s += (i == 1) ? "X" : "X^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  void check_field(const Polynomial& o) const {
    require(f_ == o.f_, Errc::RingMismatch, "polynomials over different fields");
  }

  RingSpec f_{2, 1};
  std::vector<u64> c_;
};

inline Polynomial derivative(const Polynomial& f) {
  std::vector<i64> d;
  for (int i = 1; i <= f.degree(); ++i) d.push_back(static_cast<i64>(f.coeff(i) * (i % f.field().p)));
  return Polynomial(f.field(), d);
}

/// Monic gcd; gcd(0,0) is the zero polynomial.
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = b;
    b = r;
  }
  return a.is_zero() ? a : a.monic();
}

inline bool is_squarefree(const Polynomial& f) {
  require(!f.is_zero(), Errc::ZeroPolynomial, "squarefree test on the zero polynomial");
  if (f.degree() == 0) return true;
  Polynomial g = poly_gcd(f, derivative(f));
  return g.degree() == 0;
}

/// All monic irreducibles of the given degree, in coefficient order,
/// built by sieving against lower-degree irreducibles. Cached per (p, deg).
inline const std::vector<Polynomial>& monic_irreducibles(RingSpec field, int deg) {
  require(field.is_field(), Errc::NotField, "irreducible enumeration needs a prime field");
  require(deg >= 1, Errc::DimensionMismatch, "irreducible degree must be positive");
  static std::map<std::pair<u64, int>, std::vector<Polynomial>> cache;
  auto key = std::make_pair(field.p, deg);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<Polynomial> lower;
  for (int d = 1; 2 * d <= deg; ++d) {
    const auto& ps = monic_irreducibles(field, d);
    lower.insert(lower.end(), ps.begin(), ps.end());
  }
  std::vector<Polynomial> out;
  u64 count = 1;
  for (int i = 0; i < deg; ++i) count *= field.p;
  for (u64 code = 0; code < count; ++code) {
    std::vector<i64> coeffs(deg + 1, 0);
    u64 c = code;
    for (int i = 0; i < deg; ++i) {
      coeffs[i] = static_cast<i64>(c % field.p);
      c /= field.p;
    }
    coeffs[deg] = 1;
    Polynomial f(field, coeffs);
    bool irreducible = true;
    for (const Polynomial& q : lower) {
      if ((f % q).is_zero()) {
        irreducible = false;
        break;
      }
    }
    if (irreducible) out.push_back(f);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

inline bool is_irreducible(const Polynomial& f) {
  require(f.degree() >= 1, Errc::ZeroPolynomial, "irreducibility needs degree >= 1");
  Polynomial m = f.monic();
  for (int d = 1; 2 * d <= f.degree(); ++d)
    for (const Polynomial& q : monic_irreducibles(f.field(), d))
      if ((m % q).is_zero()) return false;
  return true;
}

/// Monic irreducible factors with multiplicities, smallest factors first.
/// Factors the monic part; a nonzero leading unit is discarded.
inline std::vector<std::pair<Polynomial, int>> factor(const Polynomial& f) {
  require(!f.is_zero(), Errc::ZeroPolynomial, "factoring the zero polynomial");
  Polynomial rem = f.monic();
  std::vector<std::pair<Polynomial, int>> out;
  int d = 1;
  while (rem.degree() >= 1) {
    require(d <= rem.degree(), Errc::Internal, "factor search overran remaining degree");
    for (const Polynomial& q : monic_irreducibles(f.field(), d)) {
      int mult = 0;
      while ((rem % q).is_zero()) {
        rem = rem / q;
        ++mult;
      }
      if (mult) out.emplace_back(q, mult);
      if (rem.degree() < 1) break;
    }
    ++d;
  }
  return out;
}

}  // namespace holoforge
