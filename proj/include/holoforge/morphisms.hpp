#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <vector>

#include "holoforge/group_ops.hpp"

namespace holoforge {

constexpr u64 kDefaultIsoBudget = 10000000;

inline std::vector<u64> inner_automorphism(const Group& g, u64 x) {
  std::vector<u64> perm(g.order());
  for (u64 y = 0; y < g.order(); ++y) perm[y] = g.conj(x, y);
  return perm;
}

namespace detail {

/// One representative generator per distinct cyclic subgroup.
inline std::vector<u64> cyclic_reps(const Group& g) {
  std::set<std::vector<u64>> seen;
  std::vector<u64> reps;
  for (u64 x = 0; x < g.order(); ++x) {
    std::vector<u64> cyc{g.identity()};
    u64 acc = x;
    while (acc != g.identity()) {
      cyc.push_back(acc);
      acc = g.mul(acc, x);
    }
    std::sort(cyc.begin(), cyc.end());
    if (seen.insert(std::move(cyc)).second) reps.push_back(x);
  }
  return reps;
}

}  // namespace detail

/// Greedy: repeatedly add the element whose cyclic subgroup grows the
/// closure the most. Returns an empty list for the trivial group.
inline std::vector<u64> small_generating_set(const Group& g) {
  std::vector<u64> gens;
  std::vector<u64> closure{g.identity()};
  std::vector<u64> candidates = detail::cyclic_reps(g);
  while (closure.size() < g.order()) {
    u64 best = g.identity(), best_size = closure.size();
    for (u64 x : candidates) {
      if (std::binary_search(closure.begin(), closure.end(), x)) continue;
      std::vector<u64> trial = gens;
      trial.push_back(x);
      u64 size = detail::closure_set(g, trial, g.order()).size();
      if (size > best_size) {
        best_size = size;
        best = x;
        if (size == g.order()) break;
      }
    }
    require(best != g.identity(), Errc::Internal, "generating set search stalled");
    gens.push_back(best);
    closure = detail::closure_set(g, gens, g.order());
  }
  return gens;
}

namespace detail {

/// Per-element invariants used to filter candidate images: element order,
/// conjugacy class size, order of the image in the abelianization.
struct ElementKeys {
  std::vector<std::array<u64, 3>> key;

  explicit ElementKeys(const Group& g) : key(g.order()) {
    for (u64 x = 0; x < g.order(); ++x) key[x][0] = element_order(g, x);
    std::vector<u64> class_of(g.order(), ~u64{0});
    u64 nclasses = 0;
    std::vector<u64> sizes;
    for (u64 x = 0; x < g.order(); ++x) {
      if (class_of[x] != ~u64{0}) continue;
      std::vector<u64> orbit{x};
      class_of[x] = nclasses;
      for (size_t head = 0; head < orbit.size(); ++head)
        for (u64 c : g.generators()) {
          u64 moved = g.conj(c, orbit[head]);
          if (class_of[moved] == ~u64{0}) {
            class_of[moved] = nclasses;
            orbit.push_back(moved);
          }
        }
      sizes.push_back(orbit.size());
      ++nclasses;
    }
    for (u64 x = 0; x < g.order(); ++x) key[x][1] = sizes[class_of[x]];
    Subgroup der = derived_subgroup(g);
    QuotientResult q = quotient_abelian(g, der, g.order());
    for (u64 x = 0; x < g.order(); ++x) key[x][2] = element_order(*q.group, q.label[x]);
  }
};

constexpr u64 kUnset = ~u64{0};

struct PartialMap {
  std::vector<u64> map;      // a-id -> b-id or kUnset
  std::vector<char> used;    // b-ids already taken
  std::vector<u64> domain;   // a-ids with map defined, in discovery order
  std::vector<u64> gens;     // assigned a-generators
};

/// Defines map[new_gen] = new_img and closes the domain under right
/// multiplication by assigned generators, propagating images. Any clash
/// (non-injectivity or inconsistent product image) rejects the branch.
inline bool extend_partial(const Group& a, const Group& b, PartialMap& s, u64 new_gen, u64 new_img,
                           u64& budget) {
  require(budget > 0, Errc::BudgetExceeded, "isomorphism search budget exhausted");
  --budget;
  if (s.map[new_gen] != kUnset) {
    if (s.map[new_gen] != new_img) return false;
    s.gens.push_back(new_gen);
  } else {
    if (s.used[new_img]) return false;
    s.map[new_gen] = new_img;
    s.used[new_img] = 1;
    s.domain.push_back(new_gen);
    s.gens.push_back(new_gen);
  }
  for (size_t head = 0; head < s.domain.size(); ++head)
    for (u64 c : s.gens) {
      u64 x = s.domain[head];
      u64 next = a.mul(x, c);
      u64 img = b.mul(s.map[x], s.map[c]);
      if (s.map[next] == kUnset) {
        if (s.used[img]) return false;
        s.map[next] = img;
        s.used[img] = 1;
        s.domain.push_back(next);
      } else if (s.map[next] != img) {
        return false;
      }
    }
  return true;
}

}  // namespace detail

struct IsoResult {
  bool isomorphic = false;
  std::vector<u64> map;  // a-id -> b-id when isomorphic
  u64 extensions_used = 0;
};

/// Verifies that map is a bijective homomorphism a -> b.
inline bool is_isomorphism(const Group& a, const Group& b, const std::vector<u64>& map) {
  if (a.order() != b.order() || map.size() != a.order()) return false;
  std::vector<char> hit(b.order(), 0);
  for (u64 img : map) {
    if (img >= b.order() || hit[img]) return false;
    hit[img] = 1;
  }
  std::vector<u64> gens = a.generators();
  for (u64 g : gens)
    for (u64 x = 0; x < a.order(); ++x)
      if (map[a.mul(g, x)] != b.mul(map[g], map[x])) return false;
  return true;
}

/// Backtracking over generator images with keyed candidate filtering.
/// Throws BudgetExceeded when the extension budget runs out.
inline IsoResult are_isomorphic(const Group& a, const Group& b, u64 budget = kDefaultIsoBudget) {
  IsoResult out;
  if (a.order() != b.order()) return out;
  if (a.order() == 1) {
    out.isomorphic = true;
    out.map = {b.identity()};
    return out;
  }
  detail::ElementKeys ka(a), kb(b);
  {
    auto ha = ka.key, hb = kb.key;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return out;
  }
  std::vector<u64> gens = small_generating_set(a);
  std::vector<std::vector<u64>> candidates(gens.size());
  for (size_t i = 0; i < gens.size(); ++i)
    for (u64 y = 0; y < b.order(); ++y)
      if (kb.key[y] == ka.key[gens[i]]) candidates[i].push_back(y);
  u64 left = budget;
  detail::PartialMap root;
  root.map.assign(a.order(), detail::kUnset);
  root.used.assign(b.order(), 0);
  root.map[a.identity()] = b.identity();
  root.used[b.identity()] = 1;
  root.domain.push_back(a.identity());

  std::vector<u64> found;
  auto search = [&](auto&& self, size_t pos, const detail::PartialMap& state) -> bool {
    if (pos == gens.size()) {
      if (state.domain.size() != a.order()) return false;
      found = state.map;
      return true;
    }
    for (u64 y : candidates[pos]) {
      detail::PartialMap next = state;
      if (detail::extend_partial(a, b, next, gens[pos], y, left) && self(self, pos + 1, next))
        return true;
    }
    return false;
  };
  bool ok = search(search, 0, root);
  out.extensions_used = budget - left;
  if (!ok) return out;
  require(is_isomorphism(a, b, found), Errc::Internal, "isomorphism witness failed verification");
  out.isomorphic = true;
  out.map = std::move(found);
  return out;
}

/// Every automorphism, as a permutation of ids; complete enumeration by
/// backtracking over generator images.
inline std::vector<std::vector<u64>> all_automorphisms(const Group& g, u64 aut_cap = 200,
                                                       u64 budget = kDefaultIsoBudget) {
  std::vector<std::vector<u64>> autos;
  if (g.order() == 1) {
    autos.push_back({g.identity()});
    return autos;
  }
  detail::ElementKeys keys(g);
  std::vector<u64> gens = small_generating_set(g);
  std::vector<std::vector<u64>> candidates(gens.size());
  for (size_t i = 0; i < gens.size(); ++i)
    for (u64 y = 0; y < g.order(); ++y)
      if (keys.key[y] == keys.key[gens[i]]) candidates[i].push_back(y);
  u64 left = budget;
  detail::PartialMap root;
  root.map.assign(g.order(), detail::kUnset);
  root.used.assign(g.order(), 0);
  root.map[g.identity()] = g.identity();
  root.used[g.identity()] = 1;
  root.domain.push_back(g.identity());

  auto search = [&](auto&& self, size_t pos, const detail::PartialMap& state) -> void {
    if (pos == gens.size()) {
      if (state.domain.size() != g.order()) return;
      require(is_isomorphism(g, g, state.map), Errc::Internal, "automorphism failed verification");
      autos.push_back(state.map);
      require(autos.size() <= aut_cap, Errc::CapExceeded, "automorphism count exceeds cap");
      return;
    }
    for (u64 y : candidates[pos]) {
      detail::PartialMap next = state;
      if (detail::extend_partial(g, g, next, gens[pos], y, left)) self(self, pos + 1, next);
    }
  };
  search(search, 0, root);
  return autos;
}

inline std::shared_ptr<const PermGroup> automorphism_group(const Group& g, u64 aut_cap = 200,
                                                           u64 budget = kDefaultIsoBudget) {
  return std::make_shared<PermGroup>(g.order(), all_automorphisms(g, aut_cap, budget),
                                     std::max<u64>(aut_cap, 1024));
}

}  // namespace holoforge
