#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "holoforge/errors.hpp"
#include "holoforge/linalg.hpp"
#include "holoforge/matrix.hpp"
#include "holoforge/normal_forms.hpp"

namespace holoforge {

enum class Verdict { Conjugate, NotConjugate, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Conjugate: return "conjugate";
    case Verdict::NotConjugate: return "not_conjugate";
    default: return "unknown";
  }
}

/// Outcome of a cyclic-subgroup conjugacy test. A Conjugate verdict always
/// carries a verified witness pair (exponent, conjugator); a NotConjugate
/// verdict names the separating invariant.
struct ConjugacyDecision {
  Verdict verdict = Verdict::Unknown;
  std::optional<u64> exponent;
  std::optional<Matrix> witness;
  std::optional<std::string> separating_invariant;
  std::optional<std::string> budget_note;
};

inline u64 trace(const Matrix& a) {
  u64 t = 0;
  for (int i = 0; i < a.rows(); ++i) t = a.ring().add(t, a.at(i, i));
  return t;
}

inline bool verify_conjugacy_witness(const Matrix& a, const Matrix& b, u64 exponent, const Matrix& x) {
  if (!is_invertible(x)) return false;
  u64 ob = matrix_order(b);
  if (gcd_u64(exponent % ob == 0 ? ob : exponent % ob, ob) != 1) return false;
  return x * a == b.pow(exponent) * x;
}

/// Decides whether <a> and <b> are conjugate in GL_n(F_p): exhaustive loop
/// over the exponents i coprime to o(b), smallest i wins.
inline ConjugacyDecision cyclic_conjugate_field(const Matrix& a, const Matrix& b, u64 seed = 0) {
  require(a.ring() == b.ring(), Errc::RingMismatch, "conjugacy over different rings");
  require(a.ring().is_field(), Errc::NotField, "field procedure needs m = 1");
  require(a.square() && b.square(), Errc::NotSquare, "conjugacy needs square matrices");
  require(a.rows() == b.rows(), Errc::SizeMismatch, "conjugacy needs equal sizes");
  require(is_invertible(a) && is_invertible(b), Errc::NotInvertible, "conjugacy needs invertible matrices");

  ConjugacyDecision d;
  u64 oa = matrix_order(a), ob = matrix_order(b);
  if (oa != ob) {
    d.verdict = Verdict::NotConjugate;
    d.separating_invariant = "orders differ: " + std::to_string(oa) + " vs " + std::to_string(ob);
    return d;
  }
  Matrix bi = b;
  for (u64 i = 1; i <= ob; ++i, bi = bi * b) {
    if (gcd_u64(i, ob) != 1) continue;
    if (!is_similar(a, bi)) continue;
    Matrix x = similarity_witness(a, bi, seed);
    require(verify_conjugacy_witness(a, b, i, x), Errc::Internal, "field witness fails verification");
    d.verdict = Verdict::Conjugate;
    d.exponent = i;
    d.witness = x;
    return d;
  }
  d.verdict = Verdict::NotConjugate;
  d.separating_invariant = "no coprime power of b is similar to a";
  return d;
}

/// The decision procedure behind holomorph isomorphism over a field:
/// Hol(V,a) and Hol(V,b) are isomorphic exactly when the cyclic subgroups
/// generated by a and b are conjugate.
inline bool holomorph_isomorphic(const Matrix& a, const Matrix& b, u64 seed = 0) {
  return cyclic_conjugate_field(a, b, seed).verdict == Verdict::Conjugate;
}

constexpr u64 kDefaultConjBudget = 100000;

/// Sound three-valued conjugacy of <a>, <b> over Z/p^mZ. Refutes by
/// per-exponent invariants (order, determinant, trace sequence, residue
/// similarity); confirms only by a verified conjugator sampled from the
/// exact solution module of X a = b^i X; otherwise Unknown.
inline ConjugacyDecision cyclic_conjugate_ring(const Matrix& a, const Matrix& b,
                                               u64 budget = kDefaultConjBudget, u64 seed = 0) {
  require(a.ring() == b.ring(), Errc::RingMismatch, "conjugacy over different rings");
  require(a.square() && b.square(), Errc::NotSquare, "conjugacy needs square matrices");
  require(a.rows() == b.rows(), Errc::SizeMismatch, "conjugacy needs equal sizes");
  require(is_invertible(a) && is_invertible(b), Errc::NotInvertible, "conjugacy needs invertible matrices");
  if (a.ring().is_field()) return cyclic_conjugate_field(a, b, seed);

  const RingSpec& R = a.ring();
  int n = a.rows();
  ConjugacyDecision d;
  u64 oa = matrix_order(a), ob = matrix_order(b);
  if (oa != ob) {
    d.verdict = Verdict::NotConjugate;
    d.separating_invariant = "orders differ: " + std::to_string(oa) + " vs " + std::to_string(ob);
    return d;
  }

  u64 da = det(a);
  std::vector<u64> tra;
  {
    Matrix pw = a;
    for (u64 k = 1; k <= oa; ++k, pw = pw * a) tra.push_back(trace(pw));
  }
  Matrix abar = reduce_mod_p(a), bbar = reduce_mod_p(b);

  bool all_det_refuted = true;
  std::vector<u64> surviving;
  Matrix bi = b;
  for (u64 i = 1; i <= ob; ++i, bi = bi * b) {
    if (gcd_u64(i, ob) != 1) continue;
    if (det(bi) != da) continue;
    all_det_refuted = false;
    bool ok = true;
    Matrix pw = bi;
    for (u64 k = 1; k <= ob && ok; ++k, pw = pw * bi)
      if (trace(pw) != tra[k - 1]) ok = false;
    if (!ok) continue;
    if (!is_similar(abar, reduce_mod_p(bi))) continue;
    surviving.push_back(i);
  }

  if (surviving.empty()) {
    d.verdict = Verdict::NotConjugate;
    d.separating_invariant = all_det_refuted
        ? "determinant: det a = " + std::to_string(da) + " differs from det b^i for every coprime i"
        : "every coprime exponent refuted by determinant, trace sequence, or residue similarity";
    return d;
  }

  std::mt19937_64 g(seed * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL);
  std::uniform_int_distribution<u64> coeff(0, R.modulus - 1);
  u64 per_exponent = std::max<u64>(budget / surviving.size(), 1);
  int unresolved = 0;
  for (u64 i : surviving) {
    Matrix target = b.pow(i);
    if (a == target) {
      d.verdict = Verdict::Conjugate;
      d.exponent = i;
      d.witness = Matrix::identity(R, n);
      return d;
    }
    // Solution module of X a = target X as the kernel of an n^2 x n^2 system.
    Matrix sys(R, n * n, n * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        int row = r * n + c;
        for (int k = 0; k < n; ++k) {
          sys.at(row, r * n + k) = R.add(sys.at(row, r * n + k), a.at(k, c));
          sys.at(row, k * n + c) = R.sub(sys.at(row, k * n + c), target.at(r, k));
        }
      }
    auto gens = kernel_generators(sys);
    if (gens.empty()) continue;  // no nonzero intertwiner at all: i is refuted
    bool found = false;
    for (u64 t = 0; t < per_exponent && !found; ++t) {
      Matrix x(R, n, n);
      for (const auto& v : gens) {
        u64 c = coeff(g);
        if (!c) continue;
        for (int r = 0; r < n; ++r)
          for (int cc = 0; cc < n; ++cc) x.at(r, cc) = R.add(x.at(r, cc), R.mul(c, v[r * n + cc]));
      }
      if (!is_invertible(x)) continue;
      require(x * a == target * x, Errc::Internal, "sampled ring conjugator fails verification");
      d.verdict = Verdict::Conjugate;
      d.exponent = i;
      d.witness = x;
      found = true;
    }
    if (found) return d;
    ++unresolved;
  }
  if (unresolved == 0) {
    d.verdict = Verdict::NotConjugate;
    d.separating_invariant = "every coprime exponent refuted; no nonzero intertwiner survives";
    return d;
  }
  d.verdict = Verdict::Unknown;
  d.budget_note = "no invertible conjugator found within " + std::to_string(budget) +
                  " candidates for " + std::to_string(unresolved) + " surviving exponents";
  return d;
}

}  // namespace holoforge
