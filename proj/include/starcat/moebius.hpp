#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "starcat/group.hpp"

namespace starcat {

// The subgroup lattice of one group, with a memoized Moebius function.
// Values use arbitrary precision so coefficient assembly can never overflow
// silently.  Write-once per parent group; queries afterwards are read-only.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(Group g) : group_(std::move(g)), subs_(subgroups(group_)) {
    for (int i = 0; i < (int)subs_.size(); ++i) index_[subs_[i].bits] = i;
  }

  const Group& group() const { return group_; }
  const std::vector<Subgroup>& all() const { return subs_; }
  int size() const { return (int)subs_.size(); }

  int index_of(mask_t bits) const {
    auto it = index_.find(bits);
    if (it == index_.end()) throw error("not a subgroup of this lattice");
    return it->second;
  }
  const Subgroup& at(int i) const { return subs_[i]; }

  // indices of subgroups contained in the given mask
  std::vector<int> below(mask_t bits) const {
    std::vector<int> out;
    for (int i = 0; i < (int)subs_.size(); ++i)
      if ((subs_[i].bits & ~bits) == 0) out.push_back(i);
    return out;
  }

  // moeb(U, I): 0 unless U <= I; defined by moeb(I, I) = 1 and
  // sum over U <= V <= I of moeb(V, I) = 0 for U < I.
  const mpz_class& moebius(int u, int i) const {
    static const mpz_class zero = 0;
    if ((subs_[u].bits & ~subs_[i].bits) != 0) return zero;
    auto key = std::make_pair(u, i);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    mpz_class v;
    if (u == i) {
      v = 1;
    } else {
      v = 0;
      for (int w : below(subs_[i].bits)) {
        if (w == u) continue;
        if ((subs_[u].bits & ~subs_[w].bits) == 0) v -= moebius(w, i);
      }
    }
    return memo_.emplace(key, std::move(v)).first->second;
  }

  const mpz_class& moebius(const Subgroup& u, const Subgroup& i) const {
    if (u.parent.id() != group_.id() || i.parent.id() != group_.id())
      throw error("moebius: mismatched parents");
    static const mpz_class zero = 0;
    if ((u.bits & ~i.bits) != 0) return zero;
    return moebius(index_of(u.bits), index_of(i.bits));
  }

  // Adopt a precomputed Moebius table after checking the defining recursion
  // against the table itself.  Returns false (and adopts nothing) on any
  // mismatch.
  bool adopt_moebius_table(const std::map<std::pair<int, int>, mpz_class>& table) {
    auto value = [&](int u, int i) -> mpz_class {
      auto it = table.find({u, i});
      return it == table.end() ? mpz_class(0) : it->second;
    };
    for (int i = 0; i < size(); ++i) {
      for (int u : below(subs_[i].bits)) {
        mpz_class acc = 0;
        for (int v : below(subs_[i].bits))
          if ((subs_[u].bits & ~subs_[v].bits) == 0) acc += value(v, i);
        if (acc != (u == i ? 1 : 0)) return false;
      }
    }
    memo_ = table;
    return true;
  }

 private:
  Group group_;
  std::vector<Subgroup> subs_;
  std::unordered_map<mask_t, int> index_;
  mutable std::map<std::pair<int, int>, mpz_class> memo_;
};

class LatticeCache {
 public:
  const SubgroupLattice& get(const Group& g) { return get_mutable(g); }

  SubgroupLattice& get_mutable(const Group& g) {
    auto it = map_.find(g.id());
    if (it == map_.end())
      it = map_.emplace(g.id(), std::make_shared<SubgroupLattice>(g)).first;
    return *it->second;
  }

 private:
  std::map<const detail::GroupData*, std::shared_ptr<SubgroupLattice>> map_;
};

// Moebius value of a product of two intervals, i.e. of the interval
// [(u1,u2),(i1,i2)] in the direct product of the two lattices.
inline mpz_class product_moebius(const SubgroupLattice& l1, const Subgroup& u1,
                                 const Subgroup& i1, const SubgroupLattice& l2,
                                 const Subgroup& u2, const Subgroup& i2) {
  return l1.moebius(u1, i1) * l2.moebius(u2, i2);
}

// Totient transform at I: tot(I) = sum over V <= I of moeb(V, I) f(V).
template <class Value>
inline Value sum_to_totient(const SubgroupLattice& lat,
                            const std::function<Value(const Subgroup&)>& f,
                            const Subgroup& i) {
  Value acc{};
  int ii = lat.index_of(i.bits);
  for (int v : lat.below(i.bits)) {
    mpq_class m(lat.moebius(v, ii));
    acc = acc + f(lat.at(v)) * Value(m);
  }
  return acc;
}

// Inverse transform: sum(I) = sum over V <= I of f(V).
template <class Value>
inline Value totient_to_sum(const SubgroupLattice& lat,
                            const std::function<Value(const Subgroup&)>& f,
                            const Subgroup& i) {
  Value acc{};
  for (int v : lat.below(i.bits)) acc = acc + f(lat.at(v));
  return acc;
}

// --------------------------------------------------------------------------
// Optional on-disk cache of a lattice plus its full Moebius table.  Purely an
// optimization; loads are verified against the defining recursion.

inline std::string lattice_cache_text(const SubgroupLattice& lat) {
  std::ostringstream out;
  out << "starcat-moebius-cache v1\n";
  out << "order " << lat.group().order() << "\n";
  out << "subgroups " << lat.size() << "\n";
  out << std::hex;
  for (const auto& s : lat.all()) out << "0x" << s.bits << "\n";
  out << std::dec << "values\n";
  for (int i = 0; i < lat.size(); ++i)
    for (int u : lat.below(lat.at(i).bits))
      out << u << " " << i << " " << lat.moebius(u, i) << "\n";
  return out.str();
}

// Parses a cache document against the lattice's subgroup list.  Returns the
// stored table, or nothing if the document does not match this lattice.
inline std::optional<std::map<std::pair<int, int>, mpz_class>> parse_lattice_cache_text(
    const std::string& text, const SubgroupLattice& lat) {
  std::istringstream in(text);
  std::string tag, ver, word;
  if (!(in >> tag >> ver) || tag != "starcat-moebius-cache" || ver != "v1")
    return std::nullopt;
  long order = 0, count = 0;
  if (!(in >> word >> order) || word != "order" || order != lat.group().order())
    return std::nullopt;
  if (!(in >> word >> count) || word != "subgroups" || count != lat.size())
    return std::nullopt;
  for (int i = 0; i < count; ++i) {
    std::string hex;
    if (!(in >> hex)) return std::nullopt;
    mask_t bits = std::stoull(hex, nullptr, 16);
    if (bits != lat.at(i).bits) return std::nullopt;
  }
  if (!(in >> word) || word != "values") return std::nullopt;
  std::map<std::pair<int, int>, mpz_class> table;
  int u, i;
  std::string val;
  while (in >> u >> i >> val) {
    if (u < 0 || i < 0 || u >= lat.size() || i >= lat.size()) return std::nullopt;
    table[{u, i}] = mpz_class(val);
  }
  return table;
}

// Verification helper: parse and check against the lattice's own values.
inline bool verify_lattice_cache_text(const std::string& text, const SubgroupLattice& lat) {
  auto table = parse_lattice_cache_text(text, lat);
  if (!table) return false;
  auto value = [&](int u, int i) -> mpz_class {
    auto it = table->find({u, i});
    return it == table->end() ? mpz_class(0) : it->second;
  };
  for (int i = 0; i < lat.size(); ++i)
    for (int u : lat.below(lat.at(i).bits))
      if (value(u, i) != lat.moebius(u, i)) return false;
  return true;
}

}  // namespace starcat
