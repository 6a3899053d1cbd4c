#pragma once

#include <unordered_map>
#include <vector>

#include "holoforge/group_ops.hpp"
#include "holoforge/linalg.hpp"

namespace holoforge {

struct RebaseResult {
  std::vector<Matrix> matrices;                 // conjugation action of each K generator
  std::shared_ptr<const HolomorphGroup> image;  // holomorph rebuilt over the new basis
  std::vector<u64> iso;                         // parent id -> image id, verified
};

/// Splits g as W x| K where W is the free abelian module spanned by the
/// given basis, reads off the conjugation action of K in that basis, and
/// rebuilds the holomorph over the new matrices together with an explicit
/// isomorphism.
inline RebaseResult rebase(const HolomorphGroup& g, const std::vector<u64>& basis,
                           const std::vector<u64>& kgens, u64 cap = kDefaultGroupCap) {
  const RingSpec& ring = g.ring();
  int n = static_cast<int>(basis.size());
  require(n >= 1, Errc::NotFreeBasis, "rebase needs a nonempty basis");
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j)
      require(g.mul(basis[i], basis[j]) == g.mul(basis[j], basis[i]), Errc::NotFreeBasis,
              "basis elements do not commute");

  u64 wsize = 1;
  for (int i = 0; i < n; ++i) {
    wsize *= ring.modulus;
    require(wsize <= cap, Errc::CapExceeded, "rebased module exceeds enumeration cap");
  }
  // Coordinates: digit tuple d maps to b_1^{d_1} ... b_n^{d_n}; a free
  // basis makes this a bijection onto W.
  std::unordered_map<u64, u64> coords;
  coords.reserve(wsize);
  for (u64 uid = 0; uid < wsize; ++uid) {
    std::vector<u64> d = vector_from_index(ring, n, uid);
    u64 elem = g.identity();
    for (int i = 0; i < n; ++i) elem = g.mul(elem, g.power(basis[i], d[i]));
    require(coords.emplace(elem, uid).second, Errc::NotFreeBasis,
            "basis power products collide; not a free basis");
  }

  Subgroup w = subgroup_generated(g, basis, cap);
  require(w.order() == wsize, Errc::NotFreeBasis, "basis span has wrong order");
  for (u64 c : g.generators())
    for (u64 b : basis)
      require(coords.count(g.conj(c, b)) > 0, Errc::NotNormal, "basis span is not normal");

  Subgroup k = subgroup_generated(g, kgens, cap);
  for (u64 x : k.elems)
    require(x == g.identity() || coords.count(x) == 0, Errc::NotComplement,
            "complement meets the basis span");
  require(w.order() * k.order() == g.order(), Errc::NotComplement,
          "basis span and complement do not factor the group");

  auto action_matrix = [&](u64 kelem) {
    Matrix m = Matrix::zero(ring, n, n);
    for (int i = 0; i < n; ++i) {
      u64 moved = g.conj(kelem, basis[i]);
      auto it = coords.find(moved);
      require(it != coords.end(), Errc::Internal, "conjugate left the basis span");
      std::vector<u64> col = vector_from_index(ring, n, it->second);
      for (int r = 0; r < n; ++r) m.set(r, i, col[r]);
    }
    return m;
  };

  RebaseResult out;
  for (u64 kg : kgens) out.matrices.push_back(action_matrix(kg));
  out.image = holomorph(ring, n, out.matrices, cap);
  require(out.image->complement().order() == k.order(), Errc::NotFaithful,
          "complement does not act faithfully on the basis span");
  require(out.image->order() == g.order(), Errc::Internal, "rebased holomorph order mismatch");

  std::unordered_map<u64, u64> k_to_h;
  k_to_h.reserve(k.order());
  for (u64 ke : k.elems) k_to_h.emplace(ke, out.image->complement().index_of(action_matrix(ke)));

  out.iso.assign(g.order(), 0);
  std::vector<char> hit(g.order(), 0);
  for (u64 x = 0; x < g.order(); ++x) {
    bool done = false;
    for (u64 ke : k.elems) {
      auto it = coords.find(g.mul(x, g.inv(ke)));
      if (it == coords.end()) continue;
      out.iso[x] = out.image->make(it->second, k_to_h.at(ke));
      done = true;
      break;
    }
    require(done, Errc::Internal, "group element does not factor through the basis span");
    require(!hit[out.iso[x]], Errc::Internal, "rebase map is not injective");
    hit[out.iso[x]] = 1;
  }
  for (u64 c : g.generators())
    for (u64 x = 0; x < g.order(); ++x)
      require(out.iso[g.mul(c, x)] == out.image->mul(out.iso[c], out.iso[x]), Errc::Internal,
              "rebase map is not a homomorphism");
  return out;
}

}  // namespace holoforge
