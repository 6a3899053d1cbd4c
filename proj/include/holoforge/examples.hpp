#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "holoforge/conjugacy.hpp"
#include "holoforge/oracle.hpp"
#include "holoforge/rebase.hpp"
#include "holoforge/report.hpp"

#ifndef HOLOFORGE_DATA_DIR
#define HOLOFORGE_DATA_DIR "data"
#endif

namespace holoforge {

inline std::string data_dir() {
  if (const char* env = std::getenv("HOLOFORGE_DATA")) return env;
  return HOLOFORGE_DATA_DIR;
}

namespace detail {

inline u64 fnv64(const std::string& bytes) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::ParseError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::map<std::string, u64> checksum_manifest(const std::string& dir) {
  std::istringstream in(read_file(dir + "/checksums.txt"));
  std::map<std::string, u64> out;
  std::string hex, name;
  while (in >> hex >> name) out[name] = std::stoull(hex, nullptr, 16);
  return out;
}

inline std::vector<u64> matrix_column(const Matrix& a, int c) {
  std::vector<u64> col(a.rows());
  for (int r = 0; r < a.rows(); ++r) col[r] = a.at(r, c);
  return col;
}

}  // namespace detail

/// Checksum-verified load of a checked-in matrix, so transcription errors
/// fail loudly.
inline Matrix load_matrix(const std::string& name) {
  std::string dir = data_dir();
  std::string bytes = detail::read_file(dir + "/" + name);
  auto manifest = detail::checksum_manifest(dir);
  auto it = manifest.find(name);
  require(it != manifest.end(), Errc::ParseError, "no checksum recorded for " + name);
  require(detail::fnv64(bytes) == it->second, Errc::ParseError, "checksum mismatch for " + name);
  return Matrix::parse(bytes);
}

/// Rank four over Z/8: the holomorphs of A and B are isomorphic through a
/// change of free basis even though no conjugacy of the cyclic groups
/// exists, witnessed by the determinant.
inline RunReport run_final(u64 cap = kDefaultGroupCap) {
  WallTimer timer;
  RunReport r;
  r.command = "example final";
  RingSpec z8(2, 3);
  Matrix a = load_matrix("final_a.mat");
  Matrix b = load_matrix("final_b.mat");
  r.input("a", "final_a.mat");
  r.input("b", "final_b.mat");

  r.expect_eq("order of A", u64{24}, matrix_order(a));
  r.expect_eq("twelfth power of A", load_matrix("final_a12.mat"), a.pow(12));

  r.expect_eq("determinant of A", u64{7}, det(a));
  bool odd_dets = true;
  for (u64 k = 1; k < 24; k += 2) odd_dets &= det(b.pow(k)) == 3;
  r.expect_true("every odd power of B has determinant 3", odd_dets);
  auto decision = cyclic_conjugate_ring(a, b);
  r.expect_eq("cyclic groups conjugate", std::string("not_conjugate"),
              std::string(to_string(decision.verdict)));
  r.expect_true("refutation certified by the determinant",
                decision.separating_invariant &&
                    decision.separating_invariant->find("determinant") != std::string::npos);

  auto g = holomorph(z8, 4, {a}, cap);
  r.expect_eq("order of the holomorph", u64{98304}, g->order());

  Subgroup derived = derived_subgroup(*g);
  r.expect_eq("derived subgroup invariants", std::vector<u64>{8, 8, 8, 4},
              abelian_invariants(*g, derived));
  auto quot = quotient_abelian(*g, derived);
  r.expect_eq("abelianization invariants", std::vector<u64>{24, 2},
              abelian_invariants(*quot.group));

  Matrix am1 = a - Matrix::identity(z8, 4);
  HowellForm hf = howell(z8, {detail::matrix_column(am1, 0), detail::matrix_column(am1, 1),
                              detail::matrix_column(am1, 2), detail::matrix_column(am1, 3)},
                         4);
  std::vector<u64> xvec{7, 0, 0, 1};
  r.expect_true("x lies outside the displacement span", !hf.contains(xvec));

  u64 y = g->make(vector_to_index(z8, xvec), g->complement().index_of(a.pow(12)));
  r.expect_eq("square of y", g->from_vector(detail::matrix_column(am1, 0)), g->mul(y, y));

  std::vector<u64> wgens = derived.gens;
  wgens.push_back(y);
  Subgroup w = subgroup_generated(*g, wgens);
  r.expect_eq("order of W", u64{4096}, w.order());
  r.expect_true("W is abelian", is_abelian(*g, w));
  r.expect_eq("invariants of W", std::vector<u64>{8, 8, 8, 8}, abelian_invariants(*g, w));

  std::vector<u64> basis{y};
  for (int c = 1; c < 4; ++c) basis.push_back(g->from_vector(detail::matrix_column(am1, c)));
  RebaseResult rb = rebase(*g, basis, {g->from_matrix(a)}, cap);
  r.expect_eq("rebased action matrix count", size_t{1}, rb.matrices.size());
  r.expect_eq("rebased action matrix equals B", b, rb.matrices.at(0));
  r.expect_true("verified isomorphism onto the rebased holomorph",
                is_isomorphism(*g, *rb.image, rb.iso));

  auto overs = overgroups_of_index_two(*g, derived);
  r.expect_eq("index two overgroups of the derived subgroup", size_t{3}, overs.size());
  std::vector<std::vector<u64>> inv;
  for (const Subgroup& o : overs) inv.push_back(abelian_invariants(*g, o));
  std::sort(inv.begin(), inv.end());
  r.expect_eq("overgroup invariants",
              std::vector<std::vector<u64>>{{8, 8, 8, 4, 2}, {8, 8, 8, 8}, {8, 8, 8, 8}}, inv);
  bool w_listed = false;
  for (const Subgroup& o : overs) w_listed |= o.elems == w.elems;
  r.expect_true("W is one of the overgroups", w_listed);

  r.wall_seconds = timer.seconds();
  return r;
}

/// Odd plane: a dihedral complement is traded for a cyclic one through a
/// mixed basis.
inline RunReport run_e3(u64 p = 3, u64 cap = kDefaultGroupCap) {
  WallTimer timer;
  RunReport r;
  r.command = "example e3";
  r.input("p", std::to_string(p));
  require(p % 2 == 1 && p >= 3, Errc::DimensionMismatch, "e3 needs an odd prime");
  RingSpec field(p, 1);
  const i64 neg1 = static_cast<i64>(field.neg(1));
  Matrix refl(field, 2, 2, {neg1, 0, 0, 1});
  Matrix shear(field, 2, 2, {1, 1, 0, 1});
  auto g = holomorph(field, 2, {refl, shear}, cap);
  r.expect_eq("order of the holomorph", 2 * p * p * p, g->order());
  r.expect_true("old complement is dihedral",
                are_isomorphic(g->complement(), *dihedral_group(p)).isomorphic);

  std::vector<u64> basis{g->from_vector({1, 0}), g->from_matrix(shear)};
  RebaseResult rb = rebase(*g, basis, {g->from_vector({0, 1}), g->from_matrix(refl)}, cap);
  r.expect_eq("action of the second base vector", Matrix(field, 2, 2, {1, neg1, 0, 1}),
              rb.matrices.at(0));
  r.expect_eq("action of the reflection", Matrix(field, 2, 2, {neg1, 0, 0, neg1}),
              rb.matrices.at(1));
  r.expect_true("new complement is cyclic",
                are_isomorphic(rb.image->complement(), *cyclic_group(2 * p)).isomorphic);
  r.expect_true("complements are not isomorphic",
                !are_isomorphic(g->complement(), rb.image->complement()).isomorphic);
  r.expect_true("verified isomorphism onto the rebased holomorph",
                is_isomorphism(*g, *rb.image, rb.iso));
  r.expect_true("fingerprints of the two holomorphs match",
                fingerprint(*g) == fingerprint(*rb.image));

  r.wall_seconds = timer.seconds();
  return r;
}

/// Rank four over F_2: an elementary abelian complement is traded for a
/// dihedral one.
inline RunReport run_e7(u64 cap = kDefaultGroupCap) {
  WallTimer timer;
  RunReport r;
  r.command = "example e7";
  RingSpec f2(2, 1);
  Matrix x = load_matrix("e7_x.mat");
  Matrix y = load_matrix("e7_y.mat");
  Matrix z = load_matrix("e7_z.mat");
  r.input("generators", "e7_x.mat e7_y.mat e7_z.mat");

  auto g = holomorph(f2, 4, {x, y, z}, cap);
  r.expect_eq("order of the holomorph", u64{128}, g->order());
  r.expect_eq("old complement invariants", std::vector<u64>{2, 2, 2},
              abelian_invariants(g->complement()));

  std::vector<u64> basis{g->from_vector({1, 0, 0, 1}), g->from_vector({0, 1, 1, 0}),
                         g->from_matrix(x), g->from_matrix(z)};
  RebaseResult rb = rebase(*g, basis, {g->from_vector({1, 0, 0, 0}), g->from_matrix(y)}, cap);
  r.expect_eq("action of the first base vector", load_matrix("e7_mv.mat"), rb.matrices.at(0));
  r.expect_eq("action of Y", load_matrix("e7_my.mat"), rb.matrices.at(1));
  r.expect_true("new complement is dihedral",
                are_isomorphic(rb.image->complement(), *dihedral_group(4)).isomorphic);
  r.expect_true("complements are not isomorphic",
                !are_isomorphic(g->complement(), rb.image->complement()).isomorphic);
  r.expect_true("verified isomorphism onto the rebased holomorph",
                is_isomorphism(*g, *rb.image, rb.iso));
  r.expect_true("fingerprints of the two holomorphs match",
                fingerprint(*g) == fingerprint(*rb.image));

  r.wall_seconds = timer.seconds();
  return r;
}

/// Rank six block construction: the two complements are elementary abelian
/// of rank three yet not conjugate, separated by displacement ranks.
inline RunReport run_e9(u64 p = 2, int n = 6, u64 cap = kDefaultGroupCap) {
  WallTimer timer;
  RunReport r;
  r.command = "example e9";
  r.input("p", std::to_string(p));
  r.input("n", std::to_string(n));
  require(n == 6, Errc::CapExceeded, "rank six is the supported size");
  RingSpec field(p, 1);
  auto s_of = [&](const Matrix& top) {
    Matrix s = Matrix::identity(field, 6);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s.set(i, 3 + j, top.at(i, j));
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

  auto g = holomorph(field, 6, {s_of(a1), s_of(a2), s_of(a3)}, cap);
  u64 expected_order = 1;
  for (int i = 0; i < 9; ++i) expected_order *= p;
  r.expect_eq("order of the holomorph", expected_order, g->order());

  std::vector<u64> basis{g->from_vector({1, 0, 0, 0, 0, 0}), g->from_vector({0, 1, 0, 0, 0, 0}),
                         g->from_vector({0, 0, 1, 0, 0, 0}), g->from_matrix(s_of(a1)),
                         g->from_matrix(s_of(a2)), g->from_matrix(s_of(a3))};
  std::vector<u64> kgens{g->from_vector({0, 0, 0, 1, 0, 0}), g->from_vector({0, 0, 0, 0, 1, 0}),
                         g->from_vector({0, 0, 0, 0, 0, 1})};
  RebaseResult rb = rebase(*g, basis, kgens, cap);
  r.expect_eq("rebased action matrices", std::vector<Matrix>{s_of(b1), s_of(b2), s_of(b3)},
              rb.matrices);

  auto center_is_fixed_block = [&](const HolomorphGroup& h) {
    Subgroup zc = center(h);
    Subgroup expected = subgroup_generated(
        h, {h.from_vector({1, 0, 0, 0, 0, 0}), h.from_vector({0, 1, 0, 0, 0, 0}),
            h.from_vector({0, 0, 1, 0, 0, 0})});
    return zc.elems == expected.elems;
  };
  r.expect_true("center of the holomorph is the fixed block", center_is_fixed_block(*g));
  r.expect_true("center of the rebased holomorph is the fixed block",
                center_is_fixed_block(*rb.image));

  int max_old = 0, max_new = 0;
  const MatrixGroup& old_c = g->complement();
  for (u64 i = 0; i < old_c.order(); ++i)
    max_old = std::max(max_old, rank(old_c.matrix(i) - Matrix::identity(field, 6)));
  const MatrixGroup& new_c = rb.image->complement();
  for (u64 i = 0; i < new_c.order(); ++i)
    max_new = std::max(max_new, rank(new_c.matrix(i) - Matrix::identity(field, 6)));
  r.expect_eq("maximal displacement rank in the old complement", 3, max_old);
  r.expect_true("displacement ranks in the new complement stay at most 2", max_new <= 2);

  r.expect_true("both complements are elementary abelian of rank three",
                abelian_invariants(old_c) == std::vector<u64>{p, p, p} &&
                    abelian_invariants(new_c) == std::vector<u64>{p, p, p});
  r.expect_true("verified isomorphism onto the rebased holomorph",
                is_isomorphism(*g, *rb.image, rb.iso));

  r.wall_seconds = timer.seconds();
  return r;
}

/// Iterated holomorph: two inner automorphisms of the first holomorph give
/// isomorphic second holomorphs while their generators stay non-conjugate
/// in the automorphism group.
inline RunReport run_e1(u64 p = 2, int m = 2, u64 budget = kDefaultIsoBudget,
                        u64 cap = kDefaultGroupCap) {
  WallTimer timer;
  RunReport r;
  r.command = "example e1";
  r.input("p", std::to_string(p));
  r.input("m", std::to_string(m));
  RingSpec field(p, 1);
  std::vector<int> mults(m, 0);
  mults[m - 1] = 2;
  Matrix alpha = jordan_unipotent(field, mults);
  auto g = holomorph(field, 2 * m, {alpha}, cap);
  u64 vol = 1;
  for (int i = 0; i < 2 * m; ++i) vol *= p;
  r.expect_eq("order of the holomorph", vol * matrix_order(alpha), g->order());

  Subgroup zc = center(*g);
  std::vector<u64> e1(2 * m, 0), em1(2 * m, 0);
  e1[0] = 1;
  em1[m] = 1;
  Subgroup fixed = subgroup_generated(*g, {g->from_vector(e1), g->from_vector(em1)});
  r.expect_true("center is the fixed subspace", zc.elems == fixed.elems);

  std::vector<u64> e2(2 * m, 0);
  e2[1] = 1;
  u64 x = g->from_vector(e2);
  u64 y = g->from_matrix(alpha);
  u64 pm = 1;
  for (int i = 0; i < m + 1; ++i) pm *= p;
  r.expect_eq("centralizer order of x", vol, centralizer(*g, {x}).order());
  bool coset_small = true;
  for (u64 z : zc.elems) coset_small &= centralizer(*g, {g->mul(y, z)}).order() == pm;
  r.expect_true("centralizers across the coset of y stay small", coset_small);

  auto iterated = [&](u64 elem) {
    auto perm = inner_automorphism(*g, elem);
    return semidirect(g, {perm}, cap);
  };
  auto hol_x = iterated(x);
  auto hol_y = iterated(y);
  auto prod_x = direct_product(g, cyclic_group(hol_x->order() / g->order()), cap);
  auto prod_y = direct_product(g, cyclic_group(hol_y->order() / g->order()), cap);
  r.expect_eq("order of the iterated holomorph", g->order() * element_order(*g, x),
              hol_x->order());
  r.expect_true("iterated holomorph of x splits off its cycle",
                are_isomorphic(*hol_x, *prod_x, budget).isomorphic);
  r.expect_true("iterated holomorph of y splits off its cycle",
                are_isomorphic(*hol_y, *prod_y, budget).isomorphic);

  std::vector<u64> coset;
  for (u64 z : zc.elems) coset.push_back(g->mul(y, z));
  auto autos = all_automorphisms(*g, 100000, budget);
  bool moved = false;
  for (const auto& phi : autos)
    for (u64 t : coset) moved |= phi[x] == t;
  r.note("automorphisms enumerated", std::to_string(autos.size()));
  r.expect_true("no automorphism carries x into the coset of y", !moved);

  r.wall_seconds = timer.seconds();
  return r;
}

/// The plane over F_2: every subgroup pair of its automorphism group is
/// separated, so the base is not admitting.
inline RunReport run_e6a(u64 budget = kDefaultIsoBudget, u64 cap = kDefaultGroupCap) {
  WallTimer timer;
  RunReport r;
  r.command = "example e6a";
  AdmittingReport rep = vector_admitting_report(2, 2, budget, cap);
  r.expect_eq("base order", u64{4}, rep.base_order);
  r.expect_eq("automorphism group order", u64{6}, rep.aut_order);
  r.expect_eq("subgroup count", u64{6}, rep.subgroup_count);
  r.expect_eq("subgroup classes", size_t{4}, rep.classes.size());
  r.expect_true("not admitting", !rep.admitting);
  r.expect_true("not highly admitting", !rep.highly_admitting);
  r.wall_seconds = timer.seconds();
  return r;
}

/// Rank three over F_2: class counts in the automorphism group and the
/// invariants separating the holomorphs at orders 4, 12, and 24.
inline RunReport run_e6b(u64 budget = kDefaultIsoBudget, u64 cap = kDefaultGroupCap) {
  WallTimer timer;
  RunReport r;
  r.command = "example e6b";
  RingSpec f2(2, 1);
  MatrixGroup gl(f2, 3,
                 {Matrix::companion(f2, {1, 1, 0}), Matrix(f2, 3, 3, {1, 1, 0, 0, 1, 0, 0, 0, 1})});
  r.expect_eq("order of the linear group", u64{168}, gl.order());
  std::vector<Subgroup> subs = all_subgroups(gl);
  auto classes = subgroup_conjugacy_classes(gl, subs);

  auto reps_of_order = [&](u64 order) {
    std::vector<const Subgroup*> out;
    for (const auto& cls : classes)
      if (subs[cls.front()].order() == order) out.push_back(&subs[cls.front()]);
    return out;
  };
  auto hol_of = [&](const Subgroup& s) {
    std::vector<Matrix> hgens;
    for (u64 id : s.gens) hgens.push_back(gl.matrix(id));
    return holomorph(f2, 3, hgens, cap);
  };

  auto order4 = reps_of_order(4);
  r.expect_eq("classes of order 4", size_t{3}, order4.size());
  std::vector<std::pair<u64, int>> separations;
  std::vector<std::shared_ptr<const HolomorphGroup>> hol4;
  for (const Subgroup* s : order4) {
    auto h = hol_of(*s);
    separations.emplace_back(derived_subgroup(*h).order(), nilpotency_class(*h));
    hol4.push_back(h);
  }
  std::sort(separations.begin(), separations.end());
  r.expect_eq("derived order and nilpotency class separations",
              std::vector<std::pair<u64, int>>{{2, 2}, {4, 2}, {4, 3}}, separations);
  bool pairwise = true;
  for (size_t i = 0; i < hol4.size(); ++i)
    for (size_t j = i + 1; j < hol4.size(); ++j)
      pairwise &= !are_isomorphic(*hol4[i], *hol4[j], budget).isomorphic;
  r.expect_true("order 4 holomorphs pairwise non-isomorphic", pairwise);

  auto derived_orders = [&](const std::vector<const Subgroup*>& reps) {
    std::vector<u64> out;
    for (const Subgroup* s : reps) out.push_back(derived_subgroup(*hol_of(*s)).order());
    std::sort(out.begin(), out.end());
    return out;
  };
  auto order12 = reps_of_order(12);
  r.expect_eq("classes of order 12", size_t{2}, order12.size());
  r.expect_eq("derived orders at 12", std::vector<u64>{16, 32}, derived_orders(order12));
  auto order24 = reps_of_order(24);
  r.expect_eq("classes of order 24", size_t{2}, order24.size());
  r.expect_eq("derived orders at 24", std::vector<u64>{48, 96}, derived_orders(order24));

  AdmittingReport rep = vector_admitting_report(2, 3, budget, cap);
  r.expect_true("rank three base is not admitting", !rep.admitting);
  r.expect_eq("subgroup classes", size_t{15}, rep.classes.size());

  r.wall_seconds = timer.seconds();
  return r;
}

/// All groups of order eight: none is admitting.
inline RunReport run_e6c(u64 budget = kDefaultIsoBudget, u64 cap = kDefaultGroupCap) {
  WallTimer timer;
  RunReport r;
  r.command = "example e6c";
  r.note("scope", "all five groups of order eight");
  struct Base {
    const char* label;
    GroupPtr group;
  };
  RingSpec f2(2, 1);
  std::vector<Base> bases;
  bases.push_back({"C8", cyclic_group(8)});
  bases.push_back({"C4xC2", direct_product(cyclic_group(4), cyclic_group(2))});
  bases.push_back({"C2xC2xC2", vector_group(2, 1, 3)});
  bases.push_back({"D8", dihedral_group(4)});
  bases.push_back({"Q8", quaternion_group()});
  for (const Base& base : bases) {
    AdmittingReport rep = admitting_report(base.group, 200, budget, cap);
    r.note(std::string(base.label) + " automorphism order", std::to_string(rep.aut_order));
    r.expect_true(std::string(base.label) + " not admitting", !rep.admitting);
  }
  // The cyclic case separates three order two subgroups into three
  // distinct holomorph shapes.
  AdmittingReport c8 = admitting_report(cyclic_group(8), 200, budget, cap);
  std::vector<Fingerprint> shapes;
  for (const auto& cls : c8.classes)
    if (cls.subgroup_order == 2) shapes.push_back(cls.holomorph_fp);
  r.expect_eq("order two subgroups of the cyclic automorphism group", size_t{3}, shapes.size());
  bool distinct = true;
  for (size_t i = 0; i < shapes.size(); ++i)
    for (size_t j = i + 1; j < shapes.size(); ++j) distinct &= !(shapes[i] == shapes[j]);
  r.expect_true("their holomorphs are pairwise distinguishable", distinct);
  r.wall_seconds = timer.seconds();
  return r;
}

/// Cyclic prime power bases up to order 64: none is admitting; larger
/// bases are reported as unverified.
inline RunReport run_e6d(u64 order_cap = 64, u64 budget = kDefaultIsoBudget,
                         u64 cap = kDefaultGroupCap) {
  WallTimer timer;
  RunReport r;
  r.command = "example e6d";
  r.note("cap", "cyclic prime power bases up to order " + std::to_string(order_cap));
  r.note("beyond cap", "larger prime power bases are unverified by this command");
  for (u64 p : {u64{2}, u64{3}, u64{5}, u64{7}, u64{11}, u64{13}}) {
    for (u64 q = p; q <= order_cap; q *= p) {
      AdmittingReport rep = admitting_report(cyclic_group(q), 200, budget, cap);
      r.expect_true("C" + std::to_string(q) + " not admitting", !rep.admitting);
    }
  }
  r.wall_seconds = timer.seconds();
  return r;
}

/// Dispatch by example name; flags select the parameterized instances.
inline RunReport run_example(const std::string& name, u64 p, int n, int m, u64 budget,
                             u64 cap) {
  if (name == "final") return run_final(cap);
  if (name == "e3") return run_e3(p ? p : 3, cap);
  if (name == "e7") return run_e7(cap);
  if (name == "e9") return run_e9(p ? p : 2, n ? n : 6, cap);
  if (name == "e1") return run_e1(p ? p : 2, m ? m : 2, budget, cap);
  if (name == "e6a") return run_e6a(budget, cap);
  if (name == "e6b") return run_e6b(budget, cap);
  if (name == "e6c") return run_e6c(budget, cap);
  if (name == "e6d") return run_e6d(64, budget, cap);
  fail(Errc::UnknownExample, "unknown example: " + name);
}

}  // namespace holoforge
