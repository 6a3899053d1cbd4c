#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "holoforge/enumerate.hpp"
#include "holoforge/group_ops.hpp"
#include "holoforge/morphisms.hpp"

namespace holoforge {

constexpr u64 kDefaultFingerprintCap = u64{1} << 17;

/// Bundle of isomorphism invariants; equal fingerprints are necessary but
/// not sufficient for isomorphism.
struct Fingerprint {
  u64 order = 0;
  std::vector<std::pair<u64, u64>> order_histogram;  // (element order, count)
  u64 center_order = 0;
  std::vector<u64> derived_series_orders;
  std::vector<u64> lcs_orders;
  std::vector<u64> abelianization;  // invariant factors of G/[G,G]
  std::vector<std::pair<u64, u64>> class_size_histogram;

  bool operator==(const Fingerprint&) const = default;

  std::string str() const {
    std::ostringstream os;
    os << "order=" << order << " center=" << center_order << " orders{";
    for (auto [o, c] : order_histogram) os << ' ' << o << 'x' << c;
    os << " } derived(";
    for (u64 d : derived_series_orders) os << ' ' << d;
    os << " ) lcs(";
    for (u64 d : lcs_orders) os << ' ' << d;
    os << " ) ab(";
    for (u64 d : abelianization) os << ' ' << d;
    os << " ) classes{";
    for (auto [s, c] : class_size_histogram) os << ' ' << s << 'x' << c;
    os << " }";
    return os.str();
  }
};

inline Fingerprint fingerprint(const Group& g, u64 cap = kDefaultFingerprintCap) {
  require(g.order() <= cap, Errc::CapExceeded, "group exceeds fingerprint cap");
  Fingerprint fp;
  fp.order = g.order();
  std::map<u64, u64> orders;
  for (u64 x = 0; x < g.order(); ++x) ++orders[element_order(g, x)];
  fp.order_histogram.assign(orders.begin(), orders.end());
  fp.center_order = center(g).order();
  for (const Subgroup& s : derived_series(g)) fp.derived_series_orders.push_back(s.order());
  for (const Subgroup& s : lower_central_series(g)) fp.lcs_orders.push_back(s.order());
  Subgroup der = derived_subgroup(g);
  fp.abelianization = abelian_invariants(*quotient_abelian(g, der, g.order()).group);
  std::map<u64, u64> classes;
  std::vector<char> seen(g.order(), 0);
  for (u64 x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<u64> orbit{x};
    seen[x] = 1;
    for (size_t head = 0; head < orbit.size(); ++head)
      for (u64 c : g.generators()) {
        u64 moved = g.conj(c, orbit[head]);
        if (!seen[moved]) {
          seen[moved] = 1;
          orbit.push_back(moved);
        }
      }
    ++classes[orbit.size()];
  }
  fp.class_size_histogram.assign(classes.begin(), classes.end());
  return fp;
}

/// The subgroup as a standalone group; local ids follow the sorted element
/// list of the subgroup.
inline GroupPtr subgroup_as_group(const Group& g, const Subgroup& s, u64 cap = 4096) {
  require(s.order() <= cap, Errc::CapExceeded, "subgroup too large to materialize");
  u64 n = s.order();
  auto local = [&](u64 parent_id) {
    auto it = std::lower_bound(s.elems.begin(), s.elems.end(), parent_id);
    require(it != s.elems.end() && *it == parent_id, Errc::Internal, "product left the subgroup");
    return static_cast<u64>(it - s.elems.begin());
  };
  std::vector<u64> table(n * n);
  for (u64 i = 0; i < n; ++i)
    for (u64 j = 0; j < n; ++j) table[i * n + j] = local(g.mul(s.elems[i], s.elems[j]));
  std::vector<u64> gens;
  for (u64 x : s.gens) gens.push_back(local(x));
  if (gens.empty()) gens.push_back(local(g.identity()));
  return std::make_shared<DenseGroup>(std::move(table), n, local(g.identity()), std::move(gens),
                                      "subgroup of order " + std::to_string(n));
}

/// Complete enumeration: closes the set of subgroups under adjoining one
/// cyclic generator, starting from the trivial subgroup.
inline std::vector<Subgroup> all_subgroups(const Group& g, u64 max_count = 100000) {
  std::vector<u64> reps = detail::cyclic_reps(g);
  std::vector<Subgroup> subs;
  std::set<std::vector<u64>> seen;
  subs.push_back(subgroup_generated(g, {}));
  seen.insert(subs.front().elems);
  for (size_t head = 0; head < subs.size(); ++head) {
    std::vector<u64> base_gens = subs[head].gens;
    for (u64 r : reps) {
      if (subs[head].contains(r)) continue;
      std::vector<u64> trial = base_gens;
      trial.push_back(r);
      Subgroup next = subgroup_generated(g, trial);
      if (seen.insert(next.elems).second) {
        subs.push_back(std::move(next));
        require(subs.size() <= max_count, Errc::CapExceeded, "subgroup enumeration exceeds cap");
      }
    }
  }
  return subs;
}

/// Partition of subgroup indices into conjugacy classes.
inline std::vector<std::vector<size_t>> subgroup_conjugacy_classes(const Group& g,
                                                                  const std::vector<Subgroup>& subs) {
  std::map<std::vector<u64>, size_t> index;
  for (size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i].elems, i);
  std::vector<char> seen(subs.size(), 0);
  std::vector<std::vector<size_t>> classes;
  for (size_t i = 0; i < subs.size(); ++i) {
    if (seen[i]) continue;
    std::vector<size_t> orbit{i};
    seen[i] = 1;
    for (size_t head = 0; head < orbit.size(); ++head)
      for (u64 c : g.generators()) {
        std::vector<u64> moved;
        moved.reserve(subs[orbit[head]].order());
        for (u64 x : subs[orbit[head]].elems) moved.push_back(g.conj(c, x));
        std::sort(moved.begin(), moved.end());
        auto it = index.find(moved);
        require(it != index.end(), Errc::Internal, "conjugate subgroup missing from enumeration");
        if (!seen[it->second]) {
          seen[it->second] = 1;
          orbit.push_back(it->second);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  return classes;
}

inline bool are_conjugate_subgroups(const Group& g, const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return false;
  for (u64 c = 0; c < g.order(); ++c) {
    bool all = true;
    for (u64 x : a.gens)
      if (!b.contains(g.conj(c, x))) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

struct AdmittingClass {
  u64 subgroup_order = 0;
  u64 class_size = 0;
  size_t rep_index = 0;  // into the enumerated subgroup list
  Fingerprint holomorph_fp;
};

struct AdmittingPair {
  size_t class_a = 0, class_b = 0;
  bool complements_isomorphic = false;  // the two subgroups of Aut as abstract groups
};

struct AdmittingReport {
  u64 base_order = 0;
  u64 aut_order = 0;
  u64 subgroup_count = 0;
  std::vector<AdmittingClass> classes;
  std::vector<AdmittingPair> pairs;  // non-conjugate classes with isomorphic holomorphs
  bool admitting = false;
  bool highly_admitting = false;
  u64 oracle_comparisons = 0;
};

namespace detail {

/// Shared tail: classify subgroups of the automorphism side, fingerprint
/// each holomorph, and oracle-compare equal-fingerprint pairs.
template <typename MakeHolomorph>
AdmittingReport admitting_scan(u64 base_order, const Group& aut, MakeHolomorph&& make_hol,
                               u64 iso_budget) {
  AdmittingReport report;
  report.base_order = base_order;
  report.aut_order = aut.order();
  std::vector<Subgroup> subs = all_subgroups(aut);
  report.subgroup_count = subs.size();
  auto classes = subgroup_conjugacy_classes(aut, subs);
  std::vector<GroupPtr> hols;
  for (const auto& cls : classes) {
    AdmittingClass info;
    info.rep_index = cls.front();
    info.subgroup_order = subs[cls.front()].order();
    info.class_size = cls.size();
    GroupPtr hol = make_hol(subs[cls.front()]);
    info.holomorph_fp = fingerprint(*hol);
    hols.push_back(hol);
    report.classes.push_back(std::move(info));
  }
  for (size_t i = 0; i < report.classes.size(); ++i)
    for (size_t j = i + 1; j < report.classes.size(); ++j) {
      if (report.classes[i].subgroup_order != report.classes[j].subgroup_order) continue;
      if (!(report.classes[i].holomorph_fp == report.classes[j].holomorph_fp)) continue;
      ++report.oracle_comparisons;
      if (!are_isomorphic(*hols[i], *hols[j], iso_budget).isomorphic) continue;
      AdmittingPair pair;
      pair.class_a = i;
      pair.class_b = j;
      GroupPtr ga = subgroup_as_group(aut, subs[report.classes[i].rep_index]);
      GroupPtr gb = subgroup_as_group(aut, subs[report.classes[j].rep_index]);
      pair.complements_isomorphic = are_isomorphic(*ga, *gb, iso_budget).isomorphic;
      report.admitting = true;
      if (!pair.complements_isomorphic) report.highly_admitting = true;
      report.pairs.push_back(pair);
    }
  return report;
}

}  // namespace detail

/// Admitting scan for V = F_p^n with Aut(V) = GL_n(p) handled natively as
/// a matrix group.
inline AdmittingReport vector_admitting_report(u64 p, int n, u64 iso_budget = kDefaultIsoBudget,
                                               u64 cap = kDefaultGroupCap) {
  RingSpec field(p, 1);
  std::vector<Matrix> all = general_linear(field, n);
  MatrixGroup seed(field, n, all, cap);
  std::vector<Matrix> small;
  for (u64 id : small_generating_set(seed)) small.push_back(seed.matrix(id));
  MatrixGroup gl(field, n, small, cap);
  require(gl.order() == all.size(), Errc::Internal, "general linear closure mismatch");
  u64 base = 1;
  for (int i = 0; i < n; ++i) base *= p;
  auto make_hol = [&](const Subgroup& s) -> GroupPtr {
    std::vector<Matrix> hgens;
    for (u64 x : s.gens) hgens.push_back(gl.matrix(x));
    if (hgens.empty()) hgens.push_back(Matrix::identity(field, n));
    return holomorph(field, n, hgens, cap);
  };
  return detail::admitting_scan(base, gl, make_hol, iso_budget);
}

/// Generic admitting scan through the full automorphism group of the base.
inline AdmittingReport admitting_report(GroupPtr base, u64 aut_cap = 200,
                                        u64 iso_budget = kDefaultIsoBudget,
                                        u64 cap = kDefaultGroupCap) {
  auto aut = automorphism_group(*base, aut_cap, iso_budget);
  auto make_hol = [&](const Subgroup& s) -> GroupPtr {
    std::vector<std::vector<u64>> perms;
    for (u64 x : s.gens) perms.push_back(aut->perm(x));
    if (perms.empty()) perms.push_back(aut->perm(aut->identity()));
    return semidirect(base, perms, cap);
  };
  return detail::admitting_scan(base->order(), *aut, make_hol, iso_budget);
}

}  // namespace holoforge
