#pragma once

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "holoforge/group.hpp"

namespace holoforge {

struct Subgroup {
  const Group* parent = nullptr;
  std::vector<u64> elems;  // sorted ids
  std::vector<u64> gens;

  u64 order() const { return elems.size(); }
  bool contains(u64 x) const { return std::binary_search(elems.begin(), elems.end(), x); }
  bool trivial() const { return elems.size() == 1; }
};

namespace detail {

inline std::vector<u64> closure_set(const Group& g, const std::vector<u64>& gens, u64 cap) {
  std::unordered_set<u64> seen{g.identity()};
  std::vector<u64> work{g.identity()};
  for (size_t head = 0; head < work.size(); ++head)
    for (u64 s : gens) {
      u64 next = g.mul(work[head], s);
      if (seen.insert(next).second) {
        work.push_back(next);
        require(work.size() <= cap, Errc::CapExceeded, "subgroup closure exceeds cap");
      }
    }
  std::sort(work.begin(), work.end());
  return work;
}

}  // namespace detail

inline Subgroup subgroup_generated(const Group& g, std::vector<u64> gens, u64 cap = kDefaultGroupCap) {
  Subgroup s;
  s.parent = &g;
  s.elems = detail::closure_set(g, gens, cap);
  s.gens = std::move(gens);
  return s;
}

inline Subgroup whole_group(const Group& g) {
  Subgroup s;
  s.parent = &g;
  s.elems.resize(g.order());
  for (u64 i = 0; i < g.order(); ++i) s.elems[i] = i;
  s.gens = g.generators();
  return s;
}

inline u64 element_order(const Group& g, u64 x) {
  u64 acc = x, n = 1;
  while (acc != g.identity()) {
    acc = g.mul(acc, x);
    ++n;
    require(n <= g.order(), Errc::Internal, "element order exceeds group order");
  }
  return n;
}

/// Closure of the seeds under conjugation by the scope generators; the
/// result is the smallest subgroup containing the seeds that is normalized
/// by the subgroup the scope generates.
inline Subgroup normal_closure(const Group& g, const std::vector<u64>& seeds,
                               const std::vector<u64>& scope, u64 cap = kDefaultGroupCap) {
  std::vector<u64> gens;
  for (u64 s : seeds)
    if (s != g.identity()) gens.push_back(s);
  std::vector<u64> elems = detail::closure_set(g, gens, cap);
  for (size_t head = 0; head < gens.size(); ++head)
    for (u64 c : scope) {
      u64 moved = g.conj(c, gens[head]);
      if (!std::binary_search(elems.begin(), elems.end(), moved)) {
        gens.push_back(moved);
        elems = detail::closure_set(g, gens, cap);
      }
    }
  Subgroup s;
  s.parent = &g;
  s.elems = std::move(elems);
  s.gens = std::move(gens);
  return s;
}

inline Subgroup normal_closure(const Group& g, const std::vector<u64>& seeds, u64 cap = kDefaultGroupCap) {
  return normal_closure(g, seeds, g.generators(), cap);
}

inline bool is_normal(const Group& g, const Subgroup& n) {
  for (u64 c : g.generators())
    for (u64 x : n.gens)
      if (!n.contains(g.conj(c, x))) return false;
  return true;
}

inline Subgroup center(const Group& g) {
  Subgroup s;
  s.parent = &g;
  for (u64 x = 0; x < g.order(); ++x) {
    bool central = true;
    for (u64 c : g.generators())
      if (g.mul(x, c) != g.mul(c, x)) {
        central = false;
        break;
      }
    if (central) s.elems.push_back(x);
  }
  std::sort(s.elems.begin(), s.elems.end());
  s.gens = s.elems;
  return s;
}

inline Subgroup centralizer(const Group& g, const std::vector<u64>& xs) {
  Subgroup s;
  s.parent = &g;
  for (u64 c = 0; c < g.order(); ++c) {
    bool fixes = true;
    for (u64 x : xs)
      if (g.mul(c, x) != g.mul(x, c)) {
        fixes = false;
        break;
      }
    if (fixes) s.elems.push_back(c);
  }
  std::sort(s.elems.begin(), s.elems.end());
  s.gens = s.elems;
  return s;
}

inline Subgroup derived_of(const Group& g, const Subgroup& s, u64 cap = kDefaultGroupCap) {
  std::vector<u64> seeds;
  for (size_t i = 0; i < s.gens.size(); ++i)
    for (size_t j = i + 1; j < s.gens.size(); ++j) seeds.push_back(g.comm(s.gens[i], s.gens[j]));
  return normal_closure(g, seeds, s.gens, cap);
}

inline Subgroup derived_subgroup(const Group& g, u64 cap = kDefaultGroupCap) {
  return derived_of(g, whole_group(g), cap);
}

inline std::vector<Subgroup> derived_series(const Group& g, u64 cap = kDefaultGroupCap) {
  std::vector<Subgroup> series{whole_group(g)};
  while (true) {
    Subgroup next = derived_of(g, series.back(), cap);
    if (next.order() == series.back().order()) break;
    series.push_back(std::move(next));
    if (series.back().trivial()) break;
  }
  return series;
}

/// L_1 = G, L_{i+1} = [G, L_i]; stops at the first repeat.
inline std::vector<Subgroup> lower_central_series(const Group& g, u64 cap = kDefaultGroupCap) {
  std::vector<Subgroup> series{whole_group(g)};
  while (true) {
    std::vector<u64> seeds;
    for (u64 a : g.generators())
      for (u64 x : series.back().gens) seeds.push_back(g.comm(a, x));
    Subgroup next = normal_closure(g, seeds, g.generators(), cap);
    if (next.order() == series.back().order()) break;
    series.push_back(std::move(next));
    if (series.back().trivial()) break;
  }
  return series;
}

inline int nilpotency_class(const Group& g, u64 cap = kDefaultGroupCap) {
  auto series = lower_central_series(g, cap);
  if (!series.back().trivial()) return -1;
  return static_cast<int>(series.size()) - 1;
}

inline bool is_abelian(const Group& g, const Subgroup& s) {
  for (size_t i = 0; i < s.gens.size(); ++i)
    for (size_t j = i + 1; j < s.gens.size(); ++j)
      if (g.mul(s.gens[i], s.gens[j]) != g.mul(s.gens[j], s.gens[i])) return false;
  return true;
}

inline bool is_abelian(const Group& g) { return is_abelian(g, whole_group(g)); }

namespace detail {

inline std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace detail

/// Invariant factors d_1 >= d_2 >= ... with d_{i+1} | d_i, so that the
/// subgroup is C_{d_1} x C_{d_2} x ...; derived from element order counts.
inline std::vector<u64> abelian_invariants(const Group& g, const Subgroup& s) {
  require(is_abelian(g, s), Errc::NotAbelian, "abelian invariants of a nonabelian subgroup");
  u64 n = s.order();
  if (n == 1) return {};
  std::vector<std::vector<u64>> per_prime;
  for (auto [p, e] : detail::factor_u64(n)) {
    // t_j = #elements killed by p^j; differences of log_p t give the
    // conjugate of the exponent partition.
    std::vector<unsigned> logt{0};
    u64 pj = 1;
    for (unsigned j = 1; j <= e; ++j) {
      pj *= p;
      u64 count = 0;
      for (u64 x : s.elems)
        if (g.power(x, pj) == g.identity()) ++count;
      unsigned lg = 0;
      while (count > 1) {
        require(count % p == 0, Errc::Internal, "order count is not a p power");
        count /= p;
        ++lg;
      }
      logt.push_back(lg);
    }
    std::vector<unsigned> d;  // d_j = #exponents >= j
    for (size_t j = 1; j < logt.size(); ++j) d.push_back(logt[j] - logt[j - 1]);
    std::vector<u64> powers;  // descending p-power invariants
    for (size_t j = d.size(); j >= 1; --j) {
      unsigned next = j < d.size() ? d[j] : 0;
      for (unsigned k = 0; k < d[j - 1] - next; ++k) {
        u64 q = 1;
        for (size_t t = 0; t < j; ++t) q *= p;
        powers.push_back(q);
      }
    }
    std::sort(powers.rbegin(), powers.rend());
    per_prime.push_back(std::move(powers));
  }
  size_t rank = 0;
  for (const auto& v : per_prime) rank = std::max(rank, v.size());
  std::vector<u64> out(rank, 1);
  for (const auto& v : per_prime)
    for (size_t i = 0; i < v.size(); ++i) out[i] *= v[i];
  u64 prod = 1;
  for (u64 d : out) prod *= d;
  require(prod == n, Errc::Internal, "invariant factor product mismatch");
  return out;
}

inline std::vector<u64> abelian_invariants(const Group& g) {
  return abelian_invariants(g, whole_group(g));
}

struct QuotientResult {
  GroupPtr group;           // cosets as a dense table
  std::vector<u64> label;   // parent id -> coset id
  std::vector<u64> reps;    // coset id -> a parent representative
};

/// G/N for normal N containing [G,G]; the result is abelian.
inline QuotientResult quotient_abelian(const Group& g, const Subgroup& n, u64 cap = 4096) {
  require(is_normal(g, n), Errc::NotNormal, "quotient by a non-normal subgroup");
  const auto& gg = g.generators();
  for (size_t i = 0; i < gg.size(); ++i)
    for (size_t j = i + 1; j < gg.size(); ++j)
      require(n.contains(g.comm(gg[i], gg[j])), Errc::DerivedNotContained,
              "quotient is only materialized modulo the derived subgroup");
  u64 cosets = g.order() / n.order();
  require(cosets <= cap, Errc::CapExceeded, "quotient exceeds materialization cap");
  constexpr u64 kNone = ~u64{0};
  QuotientResult q;
  q.label.assign(g.order(), kNone);
  for (u64 x = 0; x < g.order(); ++x)
    if (q.label[x] == kNone) {
      u64 cid = q.reps.size();
      q.reps.push_back(x);
      for (u64 y : n.elems) {
        u64 member = g.mul(x, y);
        require(q.label[member] == kNone || q.label[member] == cid, Errc::Internal,
                "coset labeling collision");
        q.label[member] = cid;
      }
    }
  require(q.reps.size() == cosets, Errc::Internal, "coset count mismatch");
  std::vector<u64> table(cosets * cosets);
  for (u64 a = 0; a < cosets; ++a)
    for (u64 b = 0; b < cosets; ++b) table[a * cosets + b] = q.label[g.mul(q.reps[a], q.reps[b])];
  std::vector<u64> qgens;
  for (u64 c : gg)
    if (q.label[c] != q.label[g.identity()]) qgens.push_back(q.label[c]);
  if (qgens.empty()) qgens.push_back(q.label[g.identity()]);
  q.group = std::make_shared<DenseGroup>(std::move(table), cosets, q.label[g.identity()],
                                         std::move(qgens), g.name() + " mod N");
  return q;
}

/// Subgroups M with N <= M and [M : N] = 2, as preimages of the order-2
/// elements of G/N.
inline std::vector<Subgroup> overgroups_of_index_two(const Group& g, const Subgroup& n,
                                                     u64 cap = 4096) {
  QuotientResult q = quotient_abelian(g, n, cap);
  const Group& quo = *q.group;
  std::vector<Subgroup> out;
  for (u64 z = 0; z < quo.order(); ++z) {
    if (z == quo.identity() || quo.mul(z, z) != quo.identity()) continue;
    Subgroup m;
    m.parent = &g;
    for (u64 x = 0; x < g.order(); ++x)
      if (q.label[x] == q.label[g.identity()] || q.label[x] == z) m.elems.push_back(x);
    std::sort(m.elems.begin(), m.elems.end());
    m.gens = n.gens;
    m.gens.push_back(q.reps[z]);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace holoforge
