#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "holoforge/enumerate.hpp"
#include "holoforge/errors.hpp"
#include "holoforge/matrix.hpp"
#include "holoforge/ring.hpp"

namespace holoforge {

constexpr u64 kDefaultGroupCap = u64{1} << 20;

/// A finite group on the dense id universe 0..order-1. Handles are
/// immutable after construction and freely shareable.
class Group {
 public:
  virtual ~Group() = default;
  virtual u64 order() const = 0;
  virtual u64 identity() const = 0;
  virtual u64 mul(u64 x, u64 y) const = 0;
  virtual u64 inv(u64 x) const = 0;
  virtual const std::vector<u64>& generators() const = 0;
  virtual std::string name() const = 0;

  u64 conj(u64 g, u64 x) const { return mul(mul(g, x), inv(g)); }
  u64 comm(u64 x, u64 y) const { return mul(mul(x, y), mul(inv(x), inv(y))); }
  u64 power(u64 x, u64 e) const {
    u64 r = identity(), b = x;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
};

using GroupPtr = std::shared_ptr<const Group>;

/// Additive group (Z/p^mZ)^n; ids are mixed-radix digit strings.
class VectorGroup : public Group {
 public:
  VectorGroup(RingSpec ring, int n, u64 cap = kDefaultGroupCap) : ring_(ring), n_(n) {
    require(n >= 1, Errc::DimensionMismatch, "vector group needs positive rank");
    order_ = 1;
    for (int i = 0; i < n; ++i) {
      order_ *= ring.modulus;
      require(order_ <= cap, Errc::CapExceeded, "vector group exceeds enumeration cap");
    }
    for (int i = 0; i < n; ++i) {
      std::vector<u64> e(n, 0);
      e[i] = 1;
      gens_.push_back(encode(e));
    }
  }

  u64 order() const override { return order_; }
  u64 identity() const override { return 0; }
  u64 mul(u64 x, u64 y) const override {
    u64 r = 0, scale = 1;
    for (int i = 0; i < n_; ++i) {
      r += ((x % ring_.modulus + y % ring_.modulus) % ring_.modulus) * scale;
      x /= ring_.modulus;
      y /= ring_.modulus;
      scale *= ring_.modulus;
    }
    return r;
  }
  u64 inv(u64 x) const override {
    u64 r = 0, scale = 1;
    for (int i = 0; i < n_; ++i) {
      r += ((ring_.modulus - x % ring_.modulus) % ring_.modulus) * scale;
      x /= ring_.modulus;
      scale *= ring_.modulus;
    }
    return r;
  }
  const std::vector<u64>& generators() const override { return gens_; }
  std::string name() const override {
    return "(Z/" + std::to_string(ring_.modulus) + ")^" + std::to_string(n_);
  }

  const RingSpec& ring() const { return ring_; }
  int rank() const { return n_; }
  std::vector<u64> decode(u64 id) const { return vector_from_index(ring_, n_, id); }
  u64 encode(const std::vector<u64>& v) const {
    require(static_cast<int>(v.size()) == n_, Errc::DimensionMismatch, "vector length mismatch");
    return vector_to_index(ring_, v);
  }

 private:
  RingSpec ring_;
  int n_;
  u64 order_;
  std::vector<u64> gens_;
};

/// Multiplicative closure of invertible matrices; element 0 is the identity.
class MatrixGroup : public Group {
 public:
  MatrixGroup(RingSpec ring, int n, const std::vector<Matrix>& gens, u64 cap = kDefaultGroupCap) {
    Matrix id = Matrix::identity(ring, n);
    elems_.push_back(id);
    index_.emplace(id, 0);
    for (const Matrix& g : gens) {
      require(g.ring() == ring && g.rows() == n && g.cols() == n, Errc::SizeMismatch,
              "generator shape mismatch");
      require(is_invertible(g), Errc::NotInvertible, "matrix group generator is singular");
    }
    for (size_t head = 0; head < elems_.size(); ++head)
      for (const Matrix& g : gens) {
        Matrix next = elems_[head] * g;
        if (index_.emplace(next, elems_.size()).second) {
          elems_.push_back(std::move(next));
          require(elems_.size() <= cap, Errc::CapExceeded, "matrix group closure exceeds cap");
        }
      }
    for (const Matrix& g : gens) gens_.push_back(index_.at(g));
    inv_.resize(elems_.size());
    for (size_t i = 0; i < elems_.size(); ++i) inv_[i] = index_.at(inverse(elems_[i]));
    if (elems_.size() <= 1024) {
      table_.assign(elems_.size() * elems_.size(), 0);
      for (size_t i = 0; i < elems_.size(); ++i)
        for (size_t j = 0; j < elems_.size(); ++j)
          table_[i * elems_.size() + j] = index_.at(elems_[i] * elems_[j]);
    }
  }

  u64 order() const override { return elems_.size(); }
  u64 identity() const override { return 0; }
  u64 mul(u64 x, u64 y) const override {
    if (!table_.empty()) return table_[x * elems_.size() + y];
    return index_.at(elems_[x] * elems_[y]);
  }
  u64 inv(u64 x) const override { return inv_[x]; }
  const std::vector<u64>& generators() const override { return gens_; }
  std::string name() const override { return "matrix group of order " + std::to_string(elems_.size()); }

  const Matrix& matrix(u64 id) const { return elems_[id]; }
  u64 index_of(const Matrix& m) const {
    auto it = index_.find(m);
    require(it != index_.end(), Errc::Internal, "matrix is not in the closure");
    return it->second;
  }
  bool contains(const Matrix& m) const { return index_.count(m) > 0; }

 private:
  std::vector<Matrix> elems_;
  std::unordered_map<Matrix, u64, MatrixHash> index_;
  std::vector<u64> gens_, inv_, table_;
};

/// V x| <H> with (v,h)(w,k) = (v + h w, hk); id = uid * |H| + hid.
class HolomorphGroup : public Group {
 public:
  HolomorphGroup(RingSpec ring, int n, const std::vector<Matrix>& hgens, u64 cap = kDefaultGroupCap)
      : ring_(ring), n_(n), h_(ring, n, hgens, cap) {
    ucount_ = 1;
    for (int i = 0; i < n; ++i) ucount_ *= ring.modulus;
    require(ucount_ * h_.order() <= cap, Errc::CapExceeded, "holomorph exceeds enumeration cap");
    act_.resize(h_.order());
    for (u64 h = 0; h < h_.order(); ++h) {
      act_[h].resize(ucount_);
      const Matrix& mh = h_.matrix(h);
      for (u64 u = 0; u < ucount_; ++u)
        act_[h][u] = vector_to_index(ring_, mh.apply(vector_from_index(ring_, n_, u)));
    }
    for (int i = 0; i < n_; ++i) {
      std::vector<u64> e(n_, 0);
      e[i] = 1;
      gens_.push_back(make(vector_to_index(ring_, e), 0));
    }
    for (u64 hg : h_.generators()) gens_.push_back(make(0, hg));
  }

  u64 order() const override { return ucount_ * h_.order(); }
  u64 identity() const override { return 0; }
  u64 mul(u64 x, u64 y) const override {
    u64 ux = x / h_.order(), hx = x % h_.order();
    u64 uy = y / h_.order(), hy = y % h_.order();
    return make(uadd(ux, act_[hx][uy]), h_.mul(hx, hy));
  }
  u64 inv(u64 x) const override {
    u64 ux = x / h_.order(), hx = x % h_.order();
    u64 hi = h_.inv(hx);
    return make(act_[hi][uneg(ux)], hi);
  }
  const std::vector<u64>& generators() const override { return gens_; }
  std::string name() const override {
    return "holomorph of order " + std::to_string(order());
  }

  const RingSpec& ring() const { return ring_; }
  int dim() const { return n_; }
  const MatrixGroup& complement() const { return h_; }
  u64 vector_order() const { return ucount_; }
  u64 make(u64 uid, u64 hid) const { return uid * h_.order() + hid; }
  u64 vector_part(u64 id) const { return id / h_.order(); }
  u64 matrix_part(u64 id) const { return id % h_.order(); }
  u64 from_vector(const std::vector<u64>& v) const { return make(vector_to_index(ring_, v), 0); }
  u64 from_matrix(const Matrix& m) const { return make(0, h_.index_of(m)); }
  std::vector<u64> vector_of(u64 id) const { return vector_from_index(ring_, n_, vector_part(id)); }
  const Matrix& matrix_of(u64 id) const { return h_.matrix(matrix_part(id)); }

 private:
  u64 uadd(u64 x, u64 y) const {
    u64 r = 0, scale = 1;
    for (int i = 0; i < n_; ++i) {
      r += ((x % ring_.modulus + y % ring_.modulus) % ring_.modulus) * scale;
      x /= ring_.modulus;
      y /= ring_.modulus;
      scale *= ring_.modulus;
    }
    return r;
  }
  u64 uneg(u64 x) const {
    u64 r = 0, scale = 1;
    for (int i = 0; i < n_; ++i) {
      r += ((ring_.modulus - x % ring_.modulus) % ring_.modulus) * scale;
      x /= ring_.modulus;
      scale *= ring_.modulus;
    }
    return r;
  }

  RingSpec ring_;
  int n_;
  MatrixGroup h_;
  u64 ucount_;
  std::vector<std::vector<u64>> act_;
  std::vector<u64> gens_;
};

/// Group of permutations of 0..points-1 closed under composition;
/// p * q means "apply q, then p".
class PermGroup : public Group {
 public:
  PermGroup(u64 points, const std::vector<std::vector<u64>>& gen_perms, u64 cap = kDefaultGroupCap)
      : points_(points) {
    std::vector<u64> id(points);
    for (u64 i = 0; i < points; ++i) id[i] = i;
    elems_.push_back(id);
    index_.emplace(id, 0);
    for (const auto& g : gen_perms)
      require(is_permutation(g, points), Errc::NotAutomorphism, "generator is not a permutation");
    for (size_t head = 0; head < elems_.size(); ++head)
      for (const auto& g : gen_perms) {
        std::vector<u64> next(points);
        for (u64 i = 0; i < points; ++i) next[i] = elems_[head][g[i]];
        if (index_.emplace(next, elems_.size()).second) {
          elems_.push_back(std::move(next));
          require(elems_.size() <= cap, Errc::CapExceeded, "permutation closure exceeds cap");
        }
      }
    for (const auto& g : gen_perms) gens_.push_back(index_.at(g));
    inv_.resize(elems_.size());
    for (size_t i = 0; i < elems_.size(); ++i) {
      std::vector<u64> vi(points);
      for (u64 j = 0; j < points; ++j) vi[elems_[i][j]] = j;
      inv_[i] = index_.at(vi);
    }
    table_.assign(elems_.size() * elems_.size(), 0);
    for (size_t i = 0; i < elems_.size(); ++i)
      for (size_t j = 0; j < elems_.size(); ++j) {
        std::vector<u64> c(points);
        for (u64 k = 0; k < points; ++k) c[k] = elems_[i][elems_[j][k]];
        table_[i * elems_.size() + j] = index_.at(c);
      }
  }

  static bool is_permutation(const std::vector<u64>& g, u64 points) {
    if (g.size() != points) return false;
    std::vector<bool> seen(points, false);
    for (u64 v : g) {
      if (v >= points || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }

  u64 order() const override { return elems_.size(); }
  u64 identity() const override { return 0; }
  u64 mul(u64 x, u64 y) const override { return table_[x * elems_.size() + y]; }
  u64 inv(u64 x) const override { return inv_[x]; }
  const std::vector<u64>& generators() const override { return gens_; }
  std::string name() const override { return "permutation group of order " + std::to_string(elems_.size()); }

  u64 points() const { return points_; }
  const std::vector<u64>& perm(u64 id) const { return elems_[id]; }
  u64 index_of(const std::vector<u64>& g) const {
    auto it = index_.find(g);
    require(it != index_.end(), Errc::Internal, "permutation is not in the closure");
    return it->second;
  }
  bool contains(const std::vector<u64>& g) const { return index_.count(g) > 0; }

 private:
  u64 points_;
  std::vector<std::vector<u64>> elems_;
  std::map<std::vector<u64>, u64> index_;
  std::vector<u64> gens_, inv_, table_;
};

/// base x| P where P is the closure of verified automorphism permutations;
/// (x, s)(y, t) = (x * s(y), s t).
class SemidirectByAutos : public Group {
 public:
  SemidirectByAutos(GroupPtr base, const std::vector<std::vector<u64>>& auto_gens,
                    u64 cap = kDefaultGroupCap)
      : base_(std::move(base)), perms_(base_->order(), auto_gens, cap) {
    for (const auto& g : auto_gens) verify_automorphism(*base_, g);
    require(base_->order() * perms_.order() <= cap, Errc::CapExceeded,
            "semidirect product exceeds enumeration cap");
    for (u64 g : base_->generators()) gens_.push_back(make(g, 0));
    for (u64 s : perms_.generators()) gens_.push_back(make(base_->identity(), s));
  }

  static void verify_automorphism(const Group& g, const std::vector<u64>& phi) {
    require(PermGroup::is_permutation(phi, g.order()), Errc::NotAutomorphism,
            "map is not a bijection on the group");
    for (u64 x = 0; x < g.order(); ++x)
      for (u64 y = 0; y < g.order(); ++y)
        require(phi[g.mul(x, y)] == g.mul(phi[x], phi[y]), Errc::NotAutomorphism,
                "map is not a homomorphism");
  }

  u64 order() const override { return base_->order() * perms_.order(); }
  u64 identity() const override { return make(base_->identity(), 0); }
  u64 mul(u64 x, u64 y) const override {
    u64 bx = x / perms_.order(), sx = x % perms_.order();
    u64 by = y / perms_.order(), sy = y % perms_.order();
    return make(base_->mul(bx, perms_.perm(sx)[by]), perms_.mul(sx, sy));
  }
  u64 inv(u64 x) const override {
    u64 bx = x / perms_.order(), sx = x % perms_.order();
    u64 si = perms_.inv(sx);
    return make(perms_.perm(si)[base_->inv(bx)], si);
  }
  const std::vector<u64>& generators() const override { return gens_; }
  std::string name() const override {
    return base_->name() + " x| automorphisms (order " + std::to_string(order()) + ")";
  }

  const Group& base() const { return *base_; }
  const PermGroup& complement() const { return perms_; }
  u64 make(u64 base_id, u64 perm_id) const { return base_id * perms_.order() + perm_id; }
  u64 base_part(u64 id) const { return id / perms_.order(); }
  u64 perm_part(u64 id) const { return id % perms_.order(); }

 private:
  GroupPtr base_;
  PermGroup perms_;
  std::vector<u64> gens_;
};

class DirectProduct : public Group {
 public:
  DirectProduct(GroupPtr a, GroupPtr b, u64 cap = kDefaultGroupCap)
      : a_(std::move(a)), b_(std::move(b)) {
    require(a_->order() * b_->order() <= cap, Errc::CapExceeded, "direct product exceeds cap");
    for (u64 g : a_->generators()) gens_.push_back(make(g, b_->identity()));
    for (u64 g : b_->generators()) gens_.push_back(make(a_->identity(), g));
  }

  u64 order() const override { return a_->order() * b_->order(); }
  u64 identity() const override { return make(a_->identity(), b_->identity()); }
  u64 mul(u64 x, u64 y) const override {
    return make(a_->mul(x / b_->order(), y / b_->order()), b_->mul(x % b_->order(), y % b_->order()));
  }
  u64 inv(u64 x) const override { return make(a_->inv(x / b_->order()), b_->inv(x % b_->order())); }
  const std::vector<u64>& generators() const override { return gens_; }
  std::string name() const override { return a_->name() + " x " + b_->name(); }

  u64 make(u64 ia, u64 ib) const { return ia * b_->order() + ib; }

 private:
  GroupPtr a_, b_;
  std::vector<u64> gens_;
};

class CyclicGroup : public Group {
 public:
  explicit CyclicGroup(u64 k) : k_(k), gens_{k > 1 ? u64{1} : u64{0}} {
    require(k >= 1, Errc::DimensionMismatch, "cyclic group order must be positive");
  }
  u64 order() const override { return k_; }
  u64 identity() const override { return 0; }
  u64 mul(u64 x, u64 y) const override { return (x + y) % k_; }
  u64 inv(u64 x) const override { return (k_ - x) % k_; }
  const std::vector<u64>& generators() const override { return gens_; }
  std::string name() const override { return "C_" + std::to_string(k_); }

 private:
  u64 k_;
  std::vector<u64> gens_;
};

/// Explicit multiplication table; also used to relabel a group's ids.
class DenseGroup : public Group {
 public:
  DenseGroup(std::vector<u64> table, u64 order, u64 identity, std::vector<u64> gens, std::string name)
      : n_(order), id_(identity), table_(std::move(table)), gens_(std::move(gens)), name_(std::move(name)) {
    inv_.assign(n_, n_);
    for (u64 x = 0; x < n_; ++x)
      for (u64 y = 0; y < n_; ++y)
        if (table_[x * n_ + y] == id_) inv_[x] = y;
    for (u64 x = 0; x < n_; ++x) require(inv_[x] < n_, Errc::Internal, "table row lacks an inverse");
  }

  static std::shared_ptr<DenseGroup> materialize(const Group& g, u64 cap = 4096) {
    require(g.order() <= cap, Errc::CapExceeded, "group too large to materialize");
    u64 n = g.order();
    std::vector<u64> table(n * n);
    for (u64 x = 0; x < n; ++x)
      for (u64 y = 0; y < n; ++y) table[x * n + y] = g.mul(x, y);
    return std::make_shared<DenseGroup>(std::move(table), n, g.identity(), g.generators(), g.name());
  }

  /// Same group with ids renamed through the permutation: new id = perm[old id].
  static std::shared_ptr<DenseGroup> relabeled(const Group& g, const std::vector<u64>& perm, u64 cap = 4096) {
    require(g.order() <= cap, Errc::CapExceeded, "group too large to materialize");
    require(PermGroup::is_permutation(perm, g.order()), Errc::NotAutomorphism, "relabeling is not a permutation");
    u64 n = g.order();
    std::vector<u64> back(n);
    for (u64 i = 0; i < n; ++i) back[perm[i]] = i;
    std::vector<u64> table(n * n);
    for (u64 x = 0; x < n; ++x)
      for (u64 y = 0; y < n; ++y) table[x * n + y] = perm[g.mul(back[x], back[y])];
    std::vector<u64> gens;
    for (u64 g0 : g.generators()) gens.push_back(perm[g0]);
    return std::make_shared<DenseGroup>(std::move(table), n, perm[g.identity()], std::move(gens),
                                        g.name() + " (relabeled)");
  }

  u64 order() const override { return n_; }
  u64 identity() const override { return id_; }
  u64 mul(u64 x, u64 y) const override { return table_[x * n_ + y]; }
  u64 inv(u64 x) const override { return inv_[x]; }
  const std::vector<u64>& generators() const override { return gens_; }
  std::string name() const override { return name_; }

 private:
  u64 n_, id_;
  std::vector<u64> table_, inv_, gens_;
  std::string name_;
};

inline GroupPtr vector_group(u64 p, unsigned m, int n, u64 cap = kDefaultGroupCap) {
  return std::make_shared<VectorGroup>(RingSpec(p, m), n, cap);
}

inline GroupPtr matrix_group_closure(const std::vector<Matrix>& gens, u64 cap = kDefaultGroupCap) {
  require(!gens.empty(), Errc::DimensionMismatch, "matrix group needs at least one generator");
  return std::make_shared<MatrixGroup>(gens.front().ring(), gens.front().rows(), gens, cap);
}

inline std::shared_ptr<const HolomorphGroup> holomorph(RingSpec ring, int n, const std::vector<Matrix>& hgens,
                                                       u64 cap = kDefaultGroupCap) {
  return std::make_shared<HolomorphGroup>(ring, n, hgens, cap);
}

inline GroupPtr semidirect(GroupPtr base, const std::vector<std::vector<u64>>& auto_gens,
                           u64 cap = kDefaultGroupCap) {
  return std::make_shared<SemidirectByAutos>(std::move(base), auto_gens, cap);
}

inline GroupPtr direct_product(GroupPtr a, GroupPtr b, u64 cap = kDefaultGroupCap) {
  return std::make_shared<DirectProduct>(std::move(a), std::move(b), cap);
}

inline GroupPtr cyclic_group(u64 k) { return std::make_shared<CyclicGroup>(k); }

inline GroupPtr dihedral_group(u64 sides) {
  require(sides >= 1, Errc::DimensionMismatch, "dihedral group needs a positive rotation order");
  auto rot = std::make_shared<CyclicGroup>(sides);
  std::vector<u64> flip(sides);
  for (u64 i = 0; i < sides; ++i) flip[i] = (sides - i) % sides;
  return semidirect(rot, {flip});
}

inline GroupPtr quaternion_group() {
  // Units {1,-1,i,-i,j,-j,k,-k} in that id order.
  auto pack = [](int sign, int axis) { return static_cast<u64>(axis * 2 + (sign < 0 ? 1 : 0)); };
  std::vector<u64> table(64);
  auto mulq = [&](int sa, int aa, int sb, int ab, int& sc, int& ac) {
    static const int axis_table[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign_table[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    ac = axis_table[aa][ab];
    sc = sa * sb * sign_table[aa][ab];
  };
  for (int aa = 0; aa < 4; ++aa)
    for (int sa : {1, -1})
      for (int ab = 0; ab < 4; ++ab)
        for (int sb : {1, -1}) {
          int sc, ac;
          mulq(sa, aa, sb, ab, sc, ac);
          table[pack(sa, aa) * 8 + pack(sb, ab)] = pack(sc, ac);
        }
  return std::make_shared<DenseGroup>(std::move(table), 8, 0, std::vector<u64>{pack(1, 1), pack(1, 2)}, "Q_8");
}

}  // namespace holoforge
