#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holoforge/conjugacy.hpp"
#include "holoforge/normal_forms.hpp"
#include "holoforge/oracle.hpp"

namespace holoforge {

/// Tally of one property suite; a suite passes when it ran at least one
/// case and found no counterexample.
struct SuiteReport {
  std::string suite;
  u64 cases = 0;
  u64 failures = 0;
  std::vector<std::string> notes;

  bool ok() const { return cases > 0 && failures == 0; }

  std::string str() const {
    std::ostringstream os;
    os << suite << ": " << cases << " cases, " << failures << " failures";
    for (const auto& n : notes) os << "\n  " << n;
    return os.str();
  }
};

namespace detail {

inline void tally(SuiteReport& r, bool pass, const std::string& what) {
  ++r.cases;
  if (!pass) {
    ++r.failures;
    if (r.notes.size() < 20) r.notes.push_back("counterexample: " + what);
  }
}

inline Matrix rnd_matrix(RingSpec ring, int rows, int cols, std::mt19937_64& g) {
  Matrix a(ring, rows, cols);
  std::uniform_int_distribution<u64> d(0, ring.modulus - 1);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a.at(i, j) = d(g);
  return a;
}

inline Matrix rnd_invertible(RingSpec ring, int n, std::mt19937_64& g) {
  while (true) {
    Matrix a = rnd_matrix(ring, n, n, g);
    if (is_invertible(a)) return a;
  }
}

/// Random unipotent matrix: a random Jordan shape conjugated by a random
/// change of basis; over a proper ring a p-multiple perturbation keeps
/// alpha - 1 nilpotent.
inline Matrix rnd_unipotent(RingSpec ring, int n, std::mt19937_64& g) {
  std::vector<int> mults(n, 0);
  int left = n;
  while (left > 0) {
    int part = 1 + static_cast<int>(g() % left);
    mults[part - 1] += 1;
    left -= part;
  }
  Matrix j = jordan_unipotent(RingSpec(ring.p, 1), mults);
  Matrix a = Matrix::identity(ring, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a.set(r, c, j.at(r, c) % ring.modulus);
  if (ring.m > 1) {
    Matrix pert = rnd_matrix(ring, n, n, g);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) a.set(r, c, ring.add(a.at(r, c), ring.mul(ring.p, pert.at(r, c))));
  }
  Matrix x = rnd_invertible(ring, n, g);
  return x * a * inverse(x);
}

inline bool power_is_zero(const Matrix& a, int bound) {
  Matrix acc = Matrix::identity(a.ring(), a.rows());
  for (int i = 0; i < bound; ++i) acc = acc * a;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (acc.at(r, c)) return false;
  return true;
}

inline bool is_prime_power_of(u64 n, u64 p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

inline std::vector<std::vector<u64>> matrix_columns(const Matrix& a) {
  std::vector<std::vector<u64>> cols;
  for (int c = 0; c < a.cols(); ++c) {
    std::vector<u64> col(a.rows());
    for (int r = 0; r < a.rows(); ++r) col[r] = a.at(r, c);
    cols.push_back(std::move(col));
  }
  return cols;
}

/// Subgroup order equals the span size and every element is a pure
/// translation inside the span.
inline bool subgroup_is_span(const HolomorphGroup& g, const Subgroup& s, const HowellForm& hf) {
  if (s.order() != hf.span_size()) return false;
  for (u64 x : s.elems) {
    if (g.matrix_part(x) != 0) return false;
    if (!hf.contains(g.vector_of(x))) return false;
  }
  return true;
}

/// One generator per conjugacy class of cyclic subgroups.
inline std::vector<Matrix> cyclic_class_reps(const MatrixGroup& gl) {
  std::vector<Subgroup> subs;
  for (u64 r : cyclic_reps(gl)) subs.push_back(subgroup_generated(gl, {r}));
  std::vector<Matrix> out;
  for (const auto& cls : subgroup_conjugacy_classes(gl, subs))
    out.push_back(gl.matrix(subs[cls.front()].gens.front()));
  return out;
}

inline std::vector<u64> shuffled_ids(u64 n, std::mt19937_64& g) {
  std::vector<u64> perm(n);
  for (u64 i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), g);
  return perm;
}

inline std::string mat_tag(const Matrix& a) {
  std::string flat = a.serialize();
  for (char& c : flat)
    if (c == '\n') c = ';';
  return flat;
}

}  // namespace detail

/// Square-free minimal polynomial versus order prime to p, exhaustively on
/// small general linear groups plus randomized instances.
inline SuiteReport suite_orden(u64 seed = 1) {
  SuiteReport r;
  r.suite = "orden";
  for (u64 p : {u64{2}, u64{3}}) {
    RingSpec field(p, 1);
    for (const Matrix& a : general_linear(field, 2))
      detail::tally(r, is_squarefree(minpoly(a)) == (matrix_order(a) % p != 0),
                    "exhaustive " + detail::mat_tag(a));
  }
  auto g = std::mt19937_64(seed);
  for (int t = 0; t < 220; ++t) {
    RingSpec field(t % 3 == 0 ? 2 : (t % 3 == 1 ? 3 : 5), 1);
    int n = 2 + static_cast<int>(g() % 3);
    Matrix a = detail::rnd_invertible(field, n, g);
    detail::tally(r, is_squarefree(minpoly(a)) == (matrix_order(a) % field.p != 0),
                  "random " + detail::mat_tag(a));
  }
  return r;
}

/// Similarity to the p-th power versus p-regularity, both directions.
inline SuiteReport suite_psimilar(u64 seed = 2) {
  SuiteReport r;
  r.suite = "psimilar";
  for (u64 p : {u64{2}, u64{3}}) {
    RingSpec field(p, 1);
    for (const Matrix& a : general_linear(field, 2))
      detail::tally(r, frobenius_power_similar(a) == is_p_regular(a),
                    "exhaustive " + detail::mat_tag(a));
  }
  auto g = std::mt19937_64(seed);
  for (int t = 0; t < 220; ++t) {
    RingSpec field(t % 3 == 0 ? 2 : (t % 3 == 1 ? 3 : 5), 1);
    int n = 2 + static_cast<int>(g() % 3);
    Matrix a = detail::rnd_invertible(field, n, g);
    detail::tally(r, frobenius_power_similar(a) == is_p_regular(a), "random " + detail::mat_tag(a));
  }
  return r;
}

/// Restriction probe: a shared irreducible factor with equal image
/// dimension and similar restrictions forces similarity of the pair.
inline SuiteReport suite_pid(u64 seed = 3) {
  SuiteReport r;
  r.suite = "pid";
  auto g = std::mt19937_64(seed);
  for (int trial = 0; trial < 500; ++trial) {
    RingSpec field(trial % 2 ? 3 : 2, 1);
    int n = 2 + static_cast<int>(g() % 4);
    Matrix u = detail::rnd_matrix(field, n, n, g);
    Matrix v = u;
    if (trial % 3 == 0) {
      v = detail::rnd_matrix(field, n, n, g);
    } else {
      Matrix x = detail::rnd_invertible(field, n, g);
      v = x * u * inverse(x);
    }
    Polynomial mu = minpoly(u), mv = minpoly(v);
    for (const auto& [q, mult] : factor(mu)) {
      if (!(mv % q).is_zero()) continue;
      auto imu = image_basis(q.evaluate(u));
      auto imv = image_basis(q.evaluate(v));
      if (imu.size() != imv.size()) continue;
      if (!imu.empty() && !is_similar(restriction(u, imu), restriction(v, imv))) continue;
      detail::tally(r, is_similar(u, v), "restriction probe " + detail::mat_tag(u));
    }
  }
  if (r.cases < 200) {
    ++r.failures;
    r.notes.push_back("probe hypothesis hit fewer than 200 instances");
  }
  return r;
}

/// Nilpotent holomorph, unipotent generator, p-power order: the three
/// conditions agree on every instance.
inline SuiteReport suite_unip(u64 seed = 4) {
  SuiteReport r;
  r.suite = "unip";
  auto check = [&](const Matrix& a) {
    const RingSpec& ring = a.ring();
    int n = a.rows();
    auto hol = holomorph(ring, n, {a});
    bool nilpotent = nilpotency_class(*hol) != -1;
    bool unipotent = detail::power_is_zero(a - Matrix::identity(ring, n),
                                           n * static_cast<int>(ring.m));
    bool ppower = detail::is_prime_power_of(matrix_order(a), ring.p);
    detail::tally(r, nilpotent == unipotent && unipotent == ppower, detail::mat_tag(a));
  };
  for (u64 p : {u64{2}, u64{3}})
    for (const Matrix& a : general_linear(RingSpec(p, 1), 2)) check(a);
  auto g = std::mt19937_64(seed);
  for (int t = 0; t < 220; ++t) {
    RingSpec ring = t % 3 == 0 ? RingSpec(2, 2) : RingSpec(t % 3 == 1 ? 2 : 3, 1);
    int n = 2 + static_cast<int>(g() % 2);
    check(detail::rnd_invertible(ring, n, g));
  }
  return r;
}

/// One scope of the decision-versus-oracle comparison.
struct LindoScopeReport {
  u64 p = 0;
  int n = 0;
  std::string scope;
  u64 pairs = 0;
  std::vector<std::string> disagreements;
  bool ok() const { return pairs > 0 && disagreements.empty(); }
};

/// Compares the linear-algebra holomorph decision against the brute-force
/// oracle over a fixed scope keyed by (p, n):
///   (2, 2)  all ordered pairs of GL_2(2),
///   (3, 2)  cyclic class representatives of GL_2(3),
///   (2, 3)  representatives of cyclic subgroups of GL_3(2) of order <= 8.
inline LindoScopeReport verify_lindo(u64 p, int n, u64 budget = kDefaultIsoBudget) {
  LindoScopeReport rep;
  rep.p = p;
  rep.n = n;
  RingSpec field(p, 1);
  std::vector<Matrix> mats;
  if (p == 2 && n == 2) {
    rep.scope = "all ordered pairs";
    mats = general_linear(field, 2);
  } else if (p == 3 && n == 2) {
    rep.scope = "cyclic class representatives";
    MatrixGroup gl(field, 2,
                   {Matrix(field, 2, 2, {1, 1, 0, 1}), Matrix(field, 2, 2, {0, 1, 1, 0})});
    require(gl.order() == 48, Errc::Internal, "GL2(3) generators failed to close");
    mats = detail::cyclic_class_reps(gl);
  } else if (p == 2 && n == 3) {
    rep.scope = "cyclic subgroups of order at most 8";
    MatrixGroup gl(field, 3,
                   {Matrix::companion(field, {1, 1, 0}),
                    Matrix(field, 3, 3, {1, 1, 0, 0, 1, 0, 0, 0, 1})});
    require(gl.order() == 168, Errc::Internal, "GL3(2) generators failed to close");
    for (const Matrix& a : detail::cyclic_class_reps(gl))
      if (matrix_order(a) <= 8) mats.push_back(a);
  } else {
    fail(Errc::CapExceeded, "supported scopes: p=2 n=2, p=3 n=2, p=2 n=3");
  }
  std::vector<std::shared_ptr<const HolomorphGroup>> hols;
  for (const Matrix& a : mats) hols.push_back(holomorph(field, n, {a}));
  for (size_t i = 0; i < mats.size(); ++i)
    for (size_t j = 0; j < mats.size(); ++j) {
      ++rep.pairs;
      bool decided = holomorph_isomorphic(mats[i], mats[j]);
      bool oracle = are_isomorphic(*hols[i], *hols[j], budget).isomorphic;
      if (decided != oracle)
        rep.disagreements.push_back("pair " + std::to_string(i) + "," + std::to_string(j) +
                                    ": decision says " + (decided ? "iso" : "non-iso") +
                                    ", oracle says " + (oracle ? "iso" : "non-iso"));
    }
  return rep;
}

/// The holomorph decision against the oracle across all three scopes.
inline SuiteReport suite_lindo(u64 budget = kDefaultIsoBudget) {
  SuiteReport r;
  r.suite = "lindo";
  for (auto [p, n] : {std::pair<u64, int>{2, 2}, {3, 2}, {2, 3}}) {
    LindoScopeReport rep = verify_lindo(p, n, budget);
    r.cases += rep.pairs;
    r.failures += rep.disagreements.size();
    for (const std::string& d : rep.disagreements)
      if (r.notes.size() < 20) r.notes.push_back(rep.scope + " " + d);
    r.notes.push_back("p=" + std::to_string(p) + " n=" + std::to_string(n) + " (" + rep.scope +
                      "): " + std::to_string(rep.pairs) + " pairs");
  }
  return r;
}

/// Unipotent partitions: reconstruction from the Jordan shape, invariance
/// under conjugation, and agreement between holomorph fingerprints and
/// similarity on unipotent pairs.
inline SuiteReport suite_lindo2(u64 seed = 5, u64 budget = kDefaultIsoBudget) {
  SuiteReport r;
  r.suite = "lindo2";
  auto g = std::mt19937_64(seed);
  for (int t = 0; t < 210; ++t) {
    RingSpec field(t % 2 ? 3 : 2, 1);
    int n = 2 + static_cast<int>(g() % 4);
    std::vector<int> mults(n, 0);
    int left = n;
    while (left > 0) {
      int part = 1 + static_cast<int>(g() % left);
      mults[part - 1] += 1;
      left -= part;
    }
    std::vector<int> trimmed = mults;
    while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
    Matrix j = jordan_unipotent(field, mults);
    detail::tally(r, unipotent_partition(j) == trimmed, "reconstruction " + detail::mat_tag(j));
    Matrix x = detail::rnd_invertible(field, n, g);
    detail::tally(r, unipotent_partition(x * j * inverse(x)) == trimmed,
                  "conjugation invariance " + detail::mat_tag(x));
  }
  // Equal fingerprints of the holomorphs match similarity exactly on all
  // unipotent class representatives at size three and four over F_2.
  RingSpec f2(2, 1);
  for (int n : {3, 4}) {
    std::vector<std::vector<int>> shapes;
    std::vector<int> mults(n, 0);
    auto rec = [&](auto&& self, int left, int maxpart) -> void {
      if (left == 0) {
        shapes.push_back(mults);
        return;
      }
      for (int part = std::min(left, maxpart); part >= 1; --part) {
        mults[part - 1] += 1;
        self(self, left - part, part);
        mults[part - 1] -= 1;
      }
    };
    rec(rec, n, n);
    std::vector<Fingerprint> fps;
    for (const auto& s : shapes) fps.push_back(fingerprint(*holomorph(f2, n, {jordan_unipotent(f2, s)})));
    for (size_t i = 0; i < shapes.size(); ++i)
      for (size_t j = 0; j < shapes.size(); ++j)
        detail::tally(r, (fps[i] == fps[j]) == (shapes[i] == shapes[j]),
                      "fingerprint vs shape at n=" + std::to_string(n));
  }
  // Randomized: equal-fingerprint unipotent pairs are similar, with the
  // oracle confirming the group isomorphism.
  for (int t = 0; t < 60; ++t) {
    RingSpec field(t % 2 ? 3 : 2, 1);
    int n = 2 + static_cast<int>(g() % 2);
    Matrix a = detail::rnd_unipotent(field, n, g);
    Matrix b = detail::rnd_unipotent(field, n, g);
    auto ha = holomorph(field, n, {a});
    auto hb = holomorph(field, n, {b});
    bool fp_equal = fingerprint(*ha) == fingerprint(*hb);
    bool sim = is_similar(a, b);
    detail::tally(r, fp_equal == sim, "random pair " + detail::mat_tag(a));
    if (sim) detail::tally(r, are_isomorphic(*ha, *hb, budget).isomorphic, "oracle on similar pair");
  }
  return r;
}

/// Derived subgroup of a cyclic holomorph equals the translations of the
/// column span of alpha - 1, over fields and proper rings.
inline SuiteReport suite_derived_span(u64 seed = 6) {
  SuiteReport r;
  r.suite = "derived";
  auto check = [&](const Matrix& a) {
    const RingSpec& ring = a.ring();
    int n = a.rows();
    auto hol = holomorph(ring, n, {a});
    HowellForm hf = howell(ring, detail::matrix_columns(a - Matrix::identity(ring, n)), n);
    detail::tally(r, detail::subgroup_is_span(*hol, derived_subgroup(*hol), hf),
                  detail::mat_tag(a));
  };
  for (const Matrix& a : general_linear(RingSpec(2, 1), 2)) check(a);
  auto g = std::mt19937_64(seed);
  for (int t = 0; t < 210; ++t) {
    RingSpec ring = t % 4 == 0   ? RingSpec(2, 2)
                    : t % 4 == 1 ? RingSpec(3, 2)
                    : t % 4 == 2 ? RingSpec(2, 3)
                                 : RingSpec(t % 8 == 3 ? 3 : 5, 1);
    int n = ring.modulus >= 8 ? 2 : 2 + static_cast<int>(g() % 2);
    check(detail::rnd_invertible(ring, n, g));
  }
  return r;
}

/// For unipotent alpha the proper lower-central terms of the holomorph are
/// the translations of the spans of (alpha - 1)^i.
inline SuiteReport suite_lcs_span(u64 seed = 7) {
  SuiteReport r;
  r.suite = "lcs";
  auto g = std::mt19937_64(seed);
  for (int t = 0; t < 210; ++t) {
    RingSpec ring = t % 4 == 0 ? RingSpec(2, 2) : RingSpec(t % 2 ? 3 : 2, 1);
    int n = 2 + static_cast<int>(g() % (ring.m > 1 ? 2 : 3));
    Matrix a = detail::rnd_unipotent(ring, n, g);
    auto hol = holomorph(ring, n, {a});
    auto series = lower_central_series(*hol);
    Matrix nupart = a - Matrix::identity(ring, n);
    Matrix power = nupart;
    bool all_match = series.back().trivial();
    for (size_t i = 1; i < series.size(); ++i) {
      HowellForm hf = howell(ring, detail::matrix_columns(power), n);
      if (!detail::subgroup_is_span(*hol, series[i], hf)) all_match = false;
      power = power * nupart;
    }
    detail::tally(r, all_match, detail::mat_tag(a));
  }
  return r;
}

/// Coprime-order normal subgroups swallow every element and subgroup of
/// dividing order.
inline SuiteReport suite_ord(u64 seed = 8) {
  SuiteReport r;
  r.suite = "ord";
  auto check_instance = [&](const GroupPtr& g, const std::vector<u64>& ngens, bool subgroups) {
    Subgroup n = subgroup_generated(*g, ngens);
    require(is_normal(*g, n), Errc::Internal, "ord instance base is not normal");
    u64 quot = g->order() / n.order();
    require(std::gcd(quot, n.order()) == 1, Errc::Internal, "ord instance not coprime");
    for (u64 x = 0; x < g->order(); ++x) {
      if (n.order() % element_order(*g, x)) continue;
      detail::tally(r, n.contains(x), g->name() + " element " + std::to_string(x));
    }
    if (!subgroups) return;
    for (const Subgroup& k : all_subgroups(*g)) {
      if (n.order() % k.order()) continue;
      bool inside = true;
      for (u64 x : k.elems) inside &= n.contains(x);
      detail::tally(r, inside, g->name() + " subgroup of order " + std::to_string(k.order()));
    }
  };
  for (u64 k : {u64{3}, u64{5}, u64{7}, u64{9}, u64{15}}) {
    auto d = dihedral_group(k);
    check_instance(d, {d->generators()[0]}, k <= 9);
  }
  {
    std::vector<u64> doubling(7);
    for (u64 i = 0; i < 7; ++i) doubling[i] = (2 * i) % 7;
    auto sd = semidirect(cyclic_group(7), {doubling});
    check_instance(sd, {sd->generators()[0]}, true);
  }
  {
    Matrix a(RingSpec(2, 1), 2, 2, {0, 1, 1, 1});
    auto hol = holomorph(RingSpec(2, 1), 2, {a});
    check_instance(hol, {hol->generators()[0], hol->generators()[1]}, true);
  }
  // Randomized instances: C_k extended by a coprime-order automorphism.
  auto g = std::mt19937_64(seed);
  int made = 0;
  while (made < 25) {
    u64 k = 3 + g() % 38;
    u64 a = 2 + g() % (k - 2);
    if (std::gcd(a, k) != 1) continue;
    u64 t = 1, acc = a % k;
    while (acc != 1) {
      acc = acc * a % k;
      ++t;
    }
    if (t == 1 || std::gcd(t, k) != 1 || k * t > 500) continue;
    std::vector<u64> perm(k);
    for (u64 i = 0; i < k; ++i) perm[i] = a * i % k;
    auto sd = semidirect(cyclic_group(k), {perm});
    check_instance(sd, {sd->generators()[0]}, false);
    ++made;
  }
  return r;
}

namespace detail {

/// Holomorphs of all subgroup classes of the automorphism group of a base
/// group, together with the subgroups themselves.
struct AutClassData {
  GroupPtr base;
  std::shared_ptr<const PermGroup> aut;
  std::vector<Subgroup> reps;
  std::vector<GroupPtr> hols;
};

inline AutClassData aut_class_holomorphs(GroupPtr base, u64 aut_cap = 200) {
  AutClassData d;
  d.base = base;
  d.aut = automorphism_group(*base, aut_cap);
  std::vector<Subgroup> subs = all_subgroups(*d.aut);
  for (const auto& cls : subgroup_conjugacy_classes(*d.aut, subs)) {
    const Subgroup& s = subs[cls.front()];
    std::vector<std::vector<u64>> perms;
    for (u64 x : s.gens) perms.push_back(d.aut->perm(x));
    if (perms.empty()) perms.push_back(d.aut->perm(d.aut->identity()));
    d.reps.push_back(s);
    d.hols.push_back(semidirect(base, perms));
  }
  return d;
}

}  // namespace detail

/// Coprime case: distinct subgroups of the abelian automorphism group of
/// C_15 and C_33 always give non-isomorphic holomorphs, while relabeled
/// copies are always recognized.
inline SuiteReport suite_nicecase0(u64 seed = 9, u64 budget = kDefaultIsoBudget) {
  SuiteReport r;
  r.suite = "nicecase0";
  std::vector<detail::AutClassData> data;
  for (u64 k : {u64{15}, u64{33}}) data.push_back(detail::aut_class_holomorphs(cyclic_group(k)));
  for (const auto& d : data) {
    // Conjugacy in an abelian automorphism group is equality, so the
    // coprime statement says distinct classes force non-isomorphic
    // holomorphs.
    for (size_t i = 0; i < d.reps.size(); ++i)
      for (size_t j = i + 1; j < d.reps.size(); ++j) {
        if (d.reps[i].order() != d.reps[j].order()) continue;
        detail::tally(r, !are_isomorphic(*d.hols[i], *d.hols[j], budget).isomorphic,
                      d.base->name() + " classes " + std::to_string(i) + "," + std::to_string(j));
      }
  }
  auto g = std::mt19937_64(seed);
  for (int t = 0; t < 200; ++t) {
    const auto& d = data[t % data.size()];
    const auto& hol = d.hols[g() % d.hols.size()];
    auto relabeled = DenseGroup::relabeled(*hol, detail::shuffled_ids(hol->order(), g));
    auto res = are_isomorphic(*hol, *relabeled, budget);
    detail::tally(r, res.isomorphic && is_isomorphism(*hol, *relabeled, res.map),
                  "relabeled " + hol->name());
  }
  return r;
}

namespace detail {

/// Abelian subgroup class representatives of GL_2(3).
struct AbelianClassData {
  std::shared_ptr<MatrixGroup> gl;
  std::vector<Subgroup> reps;          // abelian class representatives
  std::vector<GroupPtr> hols;          // their holomorphs over F_3^2
  std::vector<bool> sum_condition;     // sum of (h-1)V over the subgroup is V
};

inline AbelianClassData abelian_classes_gl23() {
  RingSpec f3(3, 1);
  AbelianClassData d;
  d.gl = std::make_shared<MatrixGroup>(
      f3, 2, std::vector<Matrix>{Matrix(f3, 2, 2, {1, 1, 0, 1}), Matrix(f3, 2, 2, {0, 1, 1, 0})});
  require(d.gl->order() == 48, Errc::Internal, "GL2(3) generators failed to close");
  std::vector<Subgroup> subs = all_subgroups(*d.gl);
  for (const auto& cls : subgroup_conjugacy_classes(*d.gl, subs)) {
    const Subgroup& s = subs[cls.front()];
    if (!is_abelian(*d.gl, s)) continue;
    std::vector<Matrix> hgens;
    for (u64 x : s.gens) hgens.push_back(d.gl->matrix(x));
    if (hgens.empty()) hgens.push_back(Matrix::identity(f3, 2));
    d.reps.push_back(s);
    d.hols.push_back(holomorph(f3, 2, hgens));
    std::vector<std::vector<u64>> cols;
    for (u64 x : s.elems) {
      Matrix diff = d.gl->matrix(x) - Matrix::identity(f3, 2);
      for (auto& c : matrix_columns(diff)) cols.push_back(std::move(c));
    }
    d.sum_condition.push_back(howell(f3, std::move(cols), 2).span_size() == 9);
  }
  return d;
}

}  // namespace detail

/// Abelian subgroups of GL_2(3) whose displacement sum covers the plane:
/// isomorphic holomorphs force conjugate subgroups.
inline SuiteReport suite_suma(u64 seed = 10, u64 budget = kDefaultIsoBudget) {
  SuiteReport r;
  r.suite = "suma";
  detail::AbelianClassData d = detail::abelian_classes_gl23();
  u64 covered = 0;
  for (size_t i = 0; i < d.reps.size(); ++i) {
    if (!d.sum_condition[i]) continue;
    ++covered;
    for (size_t j = 0; j < d.reps.size(); ++j) {
      if (i == j || d.reps[i].order() != d.reps[j].order()) continue;
      bool iso = are_isomorphic(*d.hols[i], *d.hols[j], budget).isomorphic;
      bool conj = are_conjugate_subgroups(*d.gl, d.reps[i], d.reps[j]);
      detail::tally(r, !iso || conj,
                    "classes " + std::to_string(i) + "," + std::to_string(j));
    }
  }
  r.notes.push_back(std::to_string(covered) + " abelian classes satisfy the covering condition");
  // Planted conjugates: the easy direction closes the biconditional and
  // exercises the oracle on fresh instances.
  auto g = std::mt19937_64(seed);
  RingSpec f3(3, 1);
  for (int t = 0; t < 200; ++t) {
    size_t i = g() % d.reps.size();
    if (d.reps[i].order() > 12) {
      --t;  // keep planted instances small
      continue;
    }
    u64 c = g() % d.gl->order();
    std::vector<Matrix> hgens;
    for (u64 x : d.reps[i].gens) hgens.push_back(d.gl->matrix(d.gl->conj(c, x)));
    auto moved = holomorph(f3, 2, hgens);
    detail::tally(r, are_isomorphic(*d.hols[i], *moved, budget).isomorphic,
                  "planted conjugate of class " + std::to_string(i));
  }
  return r;
}

/// Abelian pairs with isomorphic holomorphs have equal abelian invariants;
/// exercised on the rank six pairs and on GL_2(3) classes.
inline SuiteReport suite_abe(u64 seed = 11, u64 budget = kDefaultIsoBudget) {
  SuiteReport r;
  r.suite = "abe";
  for (u64 p : {u64{2}, u64{3}}) {
    RingSpec field(p, 1);
    auto s_of = [&](const Matrix& a) {
      Matrix s = Matrix::identity(field, 6);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s.set(i, 3 + j, a.at(i, j));
      return s;
    };
    Matrix a1 = Matrix::identity(field, 3);
    Matrix a2 = Matrix::zero(field, 3, 3);
    a2.set(0, 1, 1);
    Matrix a3 = Matrix::zero(field, 3, 3);
    a3.set(0, 2, 1);
    Matrix b1 = Matrix::zero(field, 3, 3);
    b1.set(0, 0, field.neg(1));
    Matrix b2 = Matrix::zero(field, 3, 3);
    b2.set(0, 1, field.neg(1));
    b2.set(1, 0, field.neg(1));
    Matrix b3 = Matrix::zero(field, 3, 3);
    b3.set(0, 2, field.neg(1));
    b3.set(2, 0, field.neg(1));
    MatrixGroup h(field, 6, {s_of(a1), s_of(a2), s_of(a3)});
    MatrixGroup l(field, 6, {s_of(b1), s_of(b2), s_of(b3)});
    detail::tally(r, is_abelian(h) && is_abelian(l), "rank six pairs abelian");
    detail::tally(r, abelian_invariants(h) == std::vector<u64>{p, p, p}, "upper invariants");
    detail::tally(r, abelian_invariants(h) == abelian_invariants(l), "invariants equal");
    auto hol_h = holomorph(field, 6, {s_of(a1), s_of(a2), s_of(a3)});
    auto hol_l = holomorph(field, 6, {s_of(b1), s_of(b2), s_of(b3)});
    detail::tally(r, fingerprint(*hol_h) == fingerprint(*hol_l),
                  "rank six holomorph fingerprints p=" + std::to_string(p));
  }
  r.notes.push_back("rank four binary pair skipped: its second subgroup is nonabelian");
  // Abelian classes of GL_2(3): whenever the holomorphs are isomorphic the
  // subgroups have equal invariants.
  detail::AbelianClassData d = detail::abelian_classes_gl23();
  std::vector<std::vector<u64>> invs;
  for (const auto& s : d.reps) invs.push_back(abelian_invariants(*d.gl, s));
  for (size_t i = 0; i < d.reps.size(); ++i)
    for (size_t j = i + 1; j < d.reps.size(); ++j) {
      if (d.reps[i].order() != d.reps[j].order()) continue;
      if (!are_isomorphic(*d.hols[i], *d.hols[j], budget).isomorphic) continue;
      detail::tally(r, invs[i] == invs[j],
                    "iso holomorphs, classes " + std::to_string(i) + "," + std::to_string(j));
    }
  // Planted relabelings keep invariant equality visible to the oracle.
  auto g = std::mt19937_64(seed);
  for (int t = 0; t < 200; ++t) {
    size_t i = g() % d.reps.size();
    if (d.hols[i]->order() > 200) {
      --t;
      continue;
    }
    auto relabeled = DenseGroup::relabeled(*d.hols[i], detail::shuffled_ids(d.hols[i]->order(), g));
    detail::tally(r, are_isomorphic(*d.hols[i], *relabeled, budget).isomorphic,
                  "relabeled holomorph of class " + std::to_string(i));
  }
  return r;
}

/// Conjugate generators give equal fingerprints and oracle-isomorphic
/// holomorphs.
inline SuiteReport suite_conjugados(u64 seed = 12, u64 budget = kDefaultIsoBudget) {
  SuiteReport r;
  r.suite = "conjugados";
  auto g = std::mt19937_64(seed);
  for (int t = 0; t < 200; ++t) {
    RingSpec field(t % 3 == 0 ? 2 : (t % 3 == 1 ? 3 : 5), 1);
    int n = field.p == 5 ? 2 : 2 + static_cast<int>(g() % 2);
    Matrix a = detail::rnd_invertible(field, n, g);
    Matrix x = detail::rnd_invertible(field, n, g);
    auto ha = holomorph(field, n, {a});
    auto hb = holomorph(field, n, {x * a * inverse(x)});
    bool fp = fingerprint(*ha) == fingerprint(*hb);
    auto iso = are_isomorphic(*ha, *hb, budget);
    detail::tally(r, fp && iso.isomorphic && is_isomorphism(*ha, *hb, iso.map),
                  detail::mat_tag(a));
  }
  return r;
}

}  // namespace holoforge
