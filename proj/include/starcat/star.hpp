#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "starcat/group.hpp"
#include "starcat/moebius.hpp"
#include "starcat/scalar.hpp"

namespace starcat {

// The direct product R x S with pair packing: (x, y) <-> x * |S| + y.
class PairGroup {
 public:
  PairGroup(Group left, Group right)
      : left_(std::move(left)),
        right_(std::move(right)),
        group_(direct_product(left_, right_, kMaskCap)) {
    if (group_.order() > kMaskCap) throw error("pair group exceeds the 64-element cap");
  }

  const Group& group() const { return group_; }
  const Group& left() const { return left_; }
  const Group& right() const { return right_; }

  elt pack(elt x, elt y) const { return elt(x * right_.order() + y); }
  std::pair<elt, elt> unpack(elt i) const {
    return {elt(i / right_.order()), elt(i % right_.order())};
  }

 private:
  Group left_, right_;
  Group group_;
};

using PairRef = std::shared_ptr<const PairGroup>;

class PairCache {
 public:
  PairRef get(const Group& l, const Group& r) {
    auto key = std::make_pair(l.id(), r.id());
    auto it = map_.find(key);
    if (it == map_.end()) it = map_.emplace(key, std::make_shared<PairGroup>(l, r)).first;
    return it->second;
  }

 private:
  std::map<std::pair<const detail::GroupData*, const detail::GroupData*>, PairRef> map_;
};

// A morphism of the subgroup category: a subgroup of codomain x domain,
// tagged with its pair group.  Equal bitsets over different pairs are
// distinct morphisms.
struct Mor {
  PairRef pg;
  mask_t bits = 0;

  const Group& codomain() const { return pg->left(); }
  const Group& domain() const { return pg->right(); }
  int size() const { return std::popcount(bits); }
  Subgroup as_subgroup() const { return Subgroup{pg->group(), bits}; }
  bool contains(elt x, elt y) const { return (bits >> pg->pack(x, y)) & 1; }

  std::vector<std::pair<elt, elt>> pairs() const {
    std::vector<std::pair<elt, elt>> out;
    for (elt i = 0; i < pg->group().order(); ++i)
      if ((bits >> i) & 1) out.push_back(pg->unpack(i));
    return out;
  }

  Subgroup p1_top() const {  // image in the codomain
    mask_t m = 0;
    for (auto [x, y] : pairs()) m |= mask_t{1} << x;
    return Subgroup{pg->left(), m};
  }
  Subgroup p1_bot() const {  // {x : (x, 1) in U}
    mask_t m = 0;
    elt e = pg->right().identity();
    for (auto [x, y] : pairs())
      if (y == e) m |= mask_t{1} << x;
    return Subgroup{pg->left(), m};
  }
  Subgroup p2_top() const {  // image in the domain
    mask_t m = 0;
    for (auto [x, y] : pairs()) m |= mask_t{1} << y;
    return Subgroup{pg->right(), m};
  }
  Subgroup p2_bot() const {  // {y : (1, y) in U}
    mask_t m = 0;
    elt e = pg->left().identity();
    for (auto [x, y] : pairs())
      if (x == e) m |= mask_t{1} << y;
    return Subgroup{pg->right(), m};
  }

  bool operator==(const Mor& o) const { return pg.get() == o.pg.get() && bits == o.bits; }
  bool operator!=(const Mor& o) const { return !(*this == o); }
};

inline Mor make_mor(PairRef pg, mask_t bits) {
  if (!is_subgroup_mask(pg->group(), bits)) throw error("morphism mask is not a subgroup");
  return Mor{std::move(pg), bits};
}

// U * V = { (r, t) : exists s with (r, s) in U and (s, t) in V }, by direct
// enumeration.  The enumeration doubles as the correctness oracle for the
// Butterfly description of the composite.
inline Mor star(PairCache& cache, const Mor& u, const Mor& v) {
  if (!u.domain().same(v.codomain())) throw error("star: middle group mismatch");
  PairRef pg = cache.get(u.codomain(), v.domain());
  mask_t out = 0;
  for (auto [r, s] : u.pairs())
    for (auto [s2, t] : v.pairs())
      if (s == s2) out |= mask_t{1} << pg->pack(r, t);
  return Mor{pg, out};
}

inline Mor opposite(PairCache& cache, const Mor& u) {
  PairRef pg = cache.get(u.domain(), u.codomain());
  mask_t out = 0;
  for (auto [x, y] : u.pairs()) out |= mask_t{1} << pg->pack(y, x);
  return Mor{pg, out};
}

// conjugate ^{(f,g)}U inside the same pair group
inline Mor conjugate_mor(const Mor& u, elt f, elt g) {
  mask_t out = 0;
  for (auto [x, y] : u.pairs())
    out |= mask_t{1} << u.pg->pack(u.codomain().conj(f, x), u.domain().conj(g, y));
  return Mor{u.pg, out};
}

inline Mor delta(PairCache& cache, const Group& g) {
  PairRef pg = cache.get(g, g);
  mask_t out = 0;
  for (elt a = 0; a < g.order(); ++a) out |= mask_t{1} << pg->pack(a, a);
  return Mor{pg, out};
}

// Δ(B) = {(b, b) : b in B} as an endomorphism of G
inline Mor delta_diag(PairCache& cache, const Group& g, const Subgroup& b) {
  PairRef pg = cache.get(g, g);
  mask_t out = 0;
  for (elt a : b.elements()) out |= mask_t{1} << pg->pack(a, a);
  return Mor{pg, out};
}

// {(a x a^{-1}, x) : x in G}, the graph of conjugation by a
inline Mor conj_graph(PairCache& cache, const Group& g, elt a) {
  PairRef pg = cache.get(g, g);
  mask_t out = 0;
  for (elt x = 0; x < g.order(); ++x) out |= mask_t{1} << pg->pack(g.conj(a, x), x);
  return Mor{pg, out};
}

// graph {(f(x), x)} of a homomorphism, a morphism codomain <- domain
inline Mor graph_of(PairCache& cache, const GroupMap& f) {
  PairRef pg = cache.get(f.codomain, f.domain);
  mask_t out = 0;
  for (elt x = 0; x < f.domain.order(); ++x) out |= mask_t{1} << pg->pack(f.images[x], x);
  return Mor{pg, out};
}

inline Mor triangle_left(PairCache& cache, const GroupMap& epi) {
  if (!epi.surjective()) throw error("triangle constructors need an epimorphism");
  return graph_of(cache, epi);
}

inline Mor triangle_right(PairCache& cache, const GroupMap& epi) {
  if (!epi.surjective()) throw error("triangle constructors need an epimorphism");
  return opposite(cache, graph_of(cache, epi));
}

// --------------------------------------------------------------------------
// Goursat classification

struct GoursatData {
  Subgroup p1_top, p1_bot;  // subgroups of the codomain
  Subgroup p2_bot, p2_top;  // subgroups of the domain
  Quotient left_q;          // p1_top / p1_bot
  Quotient right_q;         // p2_top / p2_bot
  GroupMap iso;             // left_q.group <- right_q.group
};

inline GoursatData goursat(const Mor& u) {
  GoursatData d{u.p1_top(), u.p1_bot(), u.p2_bot(), u.p2_top(),
                Quotient{},  Quotient{}, GroupMap{}};
  d.left_q = quotient(d.p1_top, d.p1_bot);
  d.right_q = quotient(d.p2_top, d.p2_bot);
  d.iso = GroupMap{d.left_q.group, d.right_q.group,
                   std::vector<elt>(d.right_q.group.order())};
  std::vector<bool> done(d.right_q.group.order(), false);
  for (auto [x, y] : u.pairs()) {
    int cy = d.right_q.coset_index[y];
    if (!done[cy]) {
      d.iso.images[cy] = elt(d.left_q.coset_index[x]);
      done[cy] = true;
    }
  }
  if (!d.iso.is_homomorphism() || !d.iso.injective() || !d.iso.surjective())
    throw error("goursat: induced map is not an isomorphism");
  return d;
}

// iso_images maps coset indices of B/Y to coset indices of A/X.
inline GoursatData make_goursat_data(const Subgroup& a, const Subgroup& x,
                                     const Subgroup& b, const Subgroup& y,
                                     std::vector<elt> iso_images) {
  GoursatData d{a, x, y, b, quotient(a, x), quotient(b, y), GroupMap{}};
  d.iso = GroupMap{d.left_q.group, d.right_q.group, std::move(iso_images)};
  if (d.iso.images.size() != (std::size_t)d.right_q.group.order())
    throw error("goursat data: iso image list has the wrong length");
  if (!d.iso.is_homomorphism() || !d.iso.injective() || !d.iso.surjective())
    throw error("goursat data: not an isomorphism between the section quotients");
  return d;
}

inline Mor from_quintuple(PairCache& cache, const GoursatData& d) {
  const Group& r = d.p1_top.parent;
  const Group& s = d.p2_top.parent;
  PairRef pg = cache.get(r, s);
  mask_t out = 0;
  for (elt x : d.p1_top.elements())
    for (elt y : d.p2_top.elements())
      if (d.left_q.coset_index[x] == d.iso.images[d.right_q.coset_index[y]])
        out |= mask_t{1} << pg->pack(x, y);
  Mor m{pg, out};
  if (m.size() != d.p1_top.size() * d.p2_bot.size())
    throw error("from_quintuple: order formula violated");
  if (!is_subgroup_mask(pg->group(), out)) throw error("from_quintuple: not a subgroup");
  return m;
}

// Δ(θ) for an isomorphism θ between (full) groups: the graph of θ.
inline Mor delta_iso(PairCache& cache, const GroupMap& iso) {
  if (!iso.injective() || !iso.surjective()) throw error("delta_iso: not an isomorphism");
  return graph_of(cache, iso);
}

// The thorax as a bare quotient group (not canonicalized).
inline Quotient thorax_quotient(const Mor& u) { return quotient(u.p1_top(), u.p1_bot()); }

// --------------------------------------------------------------------------
// Cocycle and compatibility

inline Subgroup middle_intersection(const Mor& u, const Mor& v) {
  if (!u.domain().same(v.codomain())) throw error("middle group mismatch");
  return Subgroup{u.domain(), u.p2_bot().bits & v.p1_bot().bits};
}

// sigma(U, V) = ell(|U_bullet  intersect  bullet_V|)
inline Scalar cocycle_sigma(const EllSpec& spec, const Mor& u, const Mor& v) {
  return ell((unsigned long)middle_intersection(u, v).size(), spec);
}

inline bool strongly_compatible(const Mor& i, const Mor& j) {
  if (!i.domain().same(j.codomain())) throw error("middle group mismatch");
  return i.p2_top().bits == j.p1_top().bits;
}

// ad(W) = { K <= W : K has the same outer projections as W }
inline std::vector<Mor> adequate_subgroups(const SubgroupLattice& pair_lattice,
                                           const Mor& w) {
  std::vector<Mor> out;
  mask_t top1 = w.p1_top().bits, top2 = w.p2_top().bits;
  for (int i : pair_lattice.below(w.bits)) {
    Mor k{w.pg, pair_lattice.at(i).bits};
    if (k.p1_top().bits == top1 && k.p2_top().bits == top2) out.push_back(k);
  }
  return out;
}

// |U| |V| = |U^bullet . bullet_V| |U_bullet intersect bullet_V| |U * V|
inline bool order_identity_check(PairCache& cache, const Mor& u, const Mor& v) {
  const Group& g = u.domain();
  mask_t prod = 0;
  for (elt a : u.p2_top().elements())
    for (elt b : v.p1_top().elements()) prod |= mask_t{1} << g.mul(a, b);
  long lhs = (long)u.size() * v.size();
  long rhs = (long)std::popcount(prod) * middle_intersection(u, v).size() *
             star(cache, u, v).size();
  return lhs == rhs;
}

}  // namespace starcat
