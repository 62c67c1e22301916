#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "starcat/algebra.hpp"

namespace starcat {

struct GammaKey {
  int cod = 0;
  int dom = 0;
  mask_t rep = 0;  // canonical conjugacy-class representative

  auto operator<=>(const GammaKey&) const = default;
};

class Gamma;

// Element of the deformed biset category: a linear combination of
// conjugacy-class basis vectors d_U.
class GammaElement {
 public:
  GammaElement() = default;
  explicit GammaElement(const Gamma* g) : gamma_(g) {}

  const std::map<GammaKey, Scalar>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  const Gamma* owner() const { return gamma_; }

  void add(const GammaKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = entries_.find(k);
    if (it == entries_.end()) {
      entries_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  friend GammaElement operator+(const GammaElement& a, const GammaElement& b) {
    GammaElement out = a;
    for (const auto& [k, c] : b.entries_) out.add(k, c);
    return out;
  }
  friend GammaElement operator-(const GammaElement& a, const GammaElement& b) {
    GammaElement out = a;
    for (const auto& [k, c] : b.entries_) out.add(k, -c);
    return out;
  }
  friend GammaElement operator*(const Scalar& c, const GammaElement& a) {
    GammaElement out(a.gamma_);
    for (const auto& [k, v] : a.entries_) out.add(k, c * v);
    return out;
  }
  bool operator==(const GammaElement& o) const {
    return gamma_ == o.gamma_ && entries_ == o.entries_;
  }
  bool operator!=(const GammaElement& o) const { return !(*this == o); }

 private:
  const Gamma* gamma_ = nullptr;
  std::map<GammaKey, Scalar> entries_;
};

// The deformation of the biset category on the context's objects: basis
// indexed by conjugacy classes of subgroups of F x G, composition by the
// double-coset sum weighted by ell(m)/|m|.
class Gamma {
 public:
  explicit Gamma(const Context& ctx) : ctx_(&ctx) {}

  const Context& ctx() const { return *ctx_; }

  const std::vector<mask_t>& reps(int f, int g) const { return classes(f, g).reps; }

  mask_t rep_of(int f, int g, mask_t bits) const {
    const auto& c = classes(f, g);
    auto it = c.to_rep.find(bits);
    if (it == c.to_rep.end()) throw error("not a subgroup of this pair");
    return it->second;
  }

  GammaElement basis(int f, int g, mask_t bits) const {
    GammaElement e(this);
    e.add(GammaKey{f, g, rep_of(f, g, bits)}, Scalar(1));
    return e;
  }

  GammaElement identity_of(int g) const {
    return basis(g, g, delta(ctx_->pair_cache(), ctx_->group(g)).bits);
  }

  // d_U d_V = sum over double cosets U^bullet g bullet_V of
  //           ell(m_g)/|m_g| d_{U * (g x 1)V},  m_g = U_bullet cap g(bullet_V)g^-1
  GammaElement multiply(const GammaElement& a, const GammaElement& b) const {
    if (a.owner() != this || b.owner() != this) throw error("gamma: context mismatch");
    GammaElement out(this);
    for (const auto& [ka, ca] : a.entries()) {
      for (const auto& [kb, cb] : b.entries()) {
        if (ka.dom != kb.cod) continue;
        Mor u = ctx_->mor(BasisKey{ka.cod, ka.dom, ka.rep});
        Mor v = ctx_->mor(BasisKey{kb.cod, kb.dom, kb.rep});
        const Group& g = u.domain();
        Subgroup utop = u.p2_top(), vtop = v.p1_top(), ubot = u.p2_bot(),
                 vbot = v.p1_bot();
        mask_t visited = 0;
        for (elt x = 0; x < g.order(); ++x) {
          if ((visited >> x) & 1) continue;
          for (elt p : utop.elements())
            for (elt q : vtop.elements())
              visited |= mask_t{1} << g.mul(g.mul(p, x), q);
          // m = U_bullet cap conj(x, bullet_V)
          mask_t conj_vbot = 0;
          for (elt y : vbot.elements()) conj_vbot |= mask_t{1} << g.conj(x, y);
          int msize = std::popcount(ubot.bits & conj_vbot);
          Scalar factor = ctx_->ell_of((unsigned long)msize);
          factor *= Scalar(rational(1, msize));
          // (x, 1)-conjugate of V
          mask_t vbits = 0;
          for (auto [s, t] : v.pairs())
            vbits |= mask_t{1} << v.pg->pack(g.conj(x, s), t);
          Mor w = star(ctx_->pair_cache(), u, Mor{v.pg, vbits});
          Scalar c = ca * cb;
          c *= factor;
          out.add(GammaKey{ka.cod, kb.dom, rep_of(ka.cod, kb.dom, w.bits)}, c);
        }
      }
    }
    return out;
  }

  // sigma_G : K G -> End(G), g -> s over the graph of conjugation by g
  AlgebraElement sigma_map(int g, elt a) const {
    return AlgebraElement::basis(*ctx_, BasisKind::Square,
                                 conj_graph(ctx_->pair_cache(), ctx_->group(g), a));
  }

  // averaged basis element: the mean of the (f, g)-conjugates of s_U
  AlgebraElement bar_s(const Mor& u) const {
    const Group& f = u.codomain();
    const Group& g = u.domain();
    AlgebraElement out(ctx_, BasisKind::Square);
    Scalar w(rational(1, f.order() * g.order()));
    for (elt x = 0; x < f.order(); ++x)
      for (elt y = 0; y < g.order(); ++y)
        out.add(ctx_->key_of(conjugate_mor(u, x, y)), w);
    return out;
  }

  // the identity of the averaged corner: sigma_G(e_G)
  AlgebraElement averaged_identity(int g) const {
    return bar_s(delta(ctx_->pair_cache(), ctx_->group(g)));
  }

  // nu(d_U) = |G| bar_s_U / |U|
  AlgebraElement nu(const GammaElement& a) const {
    if (a.owner() != this) throw error("gamma: context mismatch");
    AlgebraElement out(ctx_, BasisKind::Square);
    for (const auto& [k, c] : a.entries()) {
      Mor u = ctx_->mor(BasisKey{k.cod, k.dom, k.rep});
      Scalar w = c;
      w *= Scalar(rational(ctx_->group(k.dom).order(), u.size()));
      out = out + w * bar_s(u);
    }
    return out;
  }

  // Independent oracle: the double Burnside product computed by explicit
  // orbit decomposition of the composite biset (F x G)/U  x_G  (G x H)/V.
  std::map<mask_t, long> burnside_product_oracle(int fi, int gi, int hi, mask_t ubits,
                                                 mask_t vbits) const;

  struct BurnsideReport {
    bool ok = true;
    long products_checked = 0;
    std::vector<std::string> failures;
  };

  // At ell(n) = n the structure constants are the double Burnside numbers:
  // non-negative integers matching the orbit-decomposition oracle.
  BurnsideReport burnside_check() const {
    if (!(ctx_->ell_spec().mode == EllSpec::Mode::Power && ctx_->ell_spec().exponent == 1))
      throw error("burnside check needs ell(n) = n");
    BurnsideReport rep;
    for (int f = 0; f < ctx_->size(); ++f)
      for (int g = 0; g < ctx_->size(); ++g)
        for (int h = 0; h < ctx_->size(); ++h)
          for (mask_t ur : reps(f, g))
            for (mask_t vr : reps(g, h)) {
              GammaElement prod = multiply(basis(f, g, ur), basis(g, h, vr));
              auto oracle = burnside_product_oracle(f, g, h, ur, vr);
              ++rep.products_checked;
              // every coefficient a non-negative integer equal to the count
              std::map<mask_t, long> got;
              for (const auto& [k, c] : prod.entries()) {
                if (!c.is_rational()) {
                  rep.ok = false;
                  rep.failures.push_back("non-rational structure constant");
                  continue;
                }
                mpq_class q = c.rational_value();
                if (q.get_den() != 1 || q < 0) {
                  rep.ok = false;
                  rep.failures.push_back("structure constant " + q.get_str() +
                                         " is not a non-negative integer");
                  continue;
                }
                got[k.rep] = q.get_num().get_si();
              }
              if (got != oracle) {
                rep.ok = false;
                rep.failures.push_back("double-coset product disagrees with the orbit "
                                       "decomposition oracle");
              }
            }
    return rep;
  }

 private:
  struct ClassData {
    std::vector<mask_t> reps;
    std::map<mask_t, mask_t> to_rep;
  };

  const ClassData& classes(int f, int g) const {
    auto key = std::make_pair(f, g);
    auto it = classes_.find(key);
    if (it == classes_.end()) {
      ClassData data;
      for (const auto& cls : conjugacy_classes_of_subgroups(ctx_->pair(f, g)->group())) {
        data.reps.push_back(cls.front().bits);
        for (const auto& s : cls) data.to_rep[s.bits] = cls.front().bits;
      }
      it = classes_.emplace(key, std::move(data)).first;
    }
    return it->second;
  }

  const Context* ctx_;
  mutable std::map<std::pair<int, int>, ClassData> classes_;
};

// Deterministic structure-constant table: one entry per composable pair of
// class representatives, listing the result classes with their coefficients.
struct GammaTableEntry {
  int f = 0, g = 0, h = 0;
  mask_t u = 0, v = 0;
  std::vector<std::pair<mask_t, std::string>> terms;
};

inline std::vector<GammaTableEntry> gamma_structure_constants(const Gamma& gm) {
  const Context& ctx = gm.ctx();
  std::vector<GammaTableEntry> out;
  for (int f = 0; f < ctx.size(); ++f)
    for (int g = 0; g < ctx.size(); ++g)
      for (int h = 0; h < ctx.size(); ++h)
        for (mask_t ur : gm.reps(f, g))
          for (mask_t vr : gm.reps(g, h)) {
            GammaTableEntry e{f, g, h, ur, vr, {}};
            GammaElement prod = gm.multiply(gm.basis(f, g, ur), gm.basis(g, h, vr));
            for (const auto& [k, c] : prod.entries()) e.terms.emplace_back(k.rep, c.text());
            out.push_back(std::move(e));
          }
  return out;
}

inline std::map<mask_t, long> Gamma::burnside_product_oracle(int fi, int gi, int hi,
                                                             mask_t ubits,
                                                             mask_t vbits) const {
  const Group& f = ctx_->group(fi);
  const Group& g = ctx_->group(gi);
  const Group& h = ctx_->group(hi);
  PairRef pfg = ctx_->pair(fi, gi);
  PairRef pgh = ctx_->pair(gi, hi);
  PairRef pfh = ctx_->pair(fi, hi);

  // left cosets of U in F x G, labelled by their least element
  auto coset_labels = [](const Group& p, mask_t sub) {
    std::vector<int> label(p.order(), -1);
    std::vector<elt> members;
    for (elt a = 0; a < p.order(); ++a)
      if ((sub >> a) & 1) members.push_back(a);
    std::vector<elt> reps;
    for (elt a = 0; a < p.order(); ++a) {
      if (label[a] >= 0) continue;
      int id = (int)reps.size();
      reps.push_back(a);
      for (elt m : members) label[p.mul(a, m)] = id;
    }
    return std::make_pair(label, reps);
  };
  auto [xlab, xreps] = coset_labels(pfg->group(), ubits);
  auto [ylab, yreps] = coset_labels(pgh->group(), vbits);
  const int nx = (int)xreps.size(), ny = (int)yreps.size();

  // union-find over pairs (x, y) for the middle G-action (x.g, y) ~ (x, g.y)
  std::vector<int> parent(nx * ny);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

  // all coset actions are left multiplications in the pair group; the biset
  // right action of s on x is left multiplication by (1, s^{-1})
  auto x_dot = [&](int x, elt s) {  // x . s
    auto [a, b] = pfg->unpack(xreps[x]);
    return xlab[pfg->pack(a, g.mul(g.inv(s), b))];
  };
  auto dot_y = [&](elt s, int y) {  // s . y
    auto [b, c] = pgh->unpack(yreps[y]);
    return ylab[pgh->pack(g.mul(s, b), c)];
  };
  // glue (x . s, y) with (x, s . y)
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (elt s = 0; s < g.order(); ++s)
        unite(x_dot(x, s) * ny + y, x * ny + dot_y(s, y));

  // the F x H action on the classes: (a, c) . [x, y] = [a . x, y . c^{-1}]
  auto act = [&](elt a, elt c, int x, int y) {
    auto [xa, xb] = pfg->unpack(xreps[x]);
    auto [yb, yc] = pgh->unpack(yreps[y]);
    int x2 = xlab[pfg->pack(f.mul(a, xa), xb)];
    int y2 = ylab[pgh->pack(yb, h.mul(c, yc))];
    return find(x2 * ny + y2);
  };

  std::map<mask_t, long> tally;
  std::set<int> seen;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      int cls = find(x * ny + y);
      if (seen.count(cls)) continue;
      // orbit of this point under F x H, recorded via stabilizer type
      std::set<int> orbit;
      mask_t stab = 0;
      for (elt a = 0; a < f.order(); ++a)
        for (elt c = 0; c < h.order(); ++c) {
          int img = act(a, c, x, y);
          orbit.insert(img);
          if (img == cls) stab |= mask_t{1} << pfh->pack(a, c);
        }
      for (int o : orbit) seen.insert(o);
      ++tally[rep_of(fi, hi, stab)];
    }
  return tally;
}

}  // namespace starcat
