#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "starcat/errors.hpp"

namespace starcat {

using elt = std::uint16_t;
using mask_t = std::uint64_t;

inline constexpr int kDefaultOrderCap = 64;

// Largest group whose subgroups we can hold in a 64-bit mask.  Pair groups
// F x G are subject to this bound as well.
inline constexpr int kMaskCap = 64;

namespace detail {

struct GroupData {
  int order = 0;
  elt identity = 0;
  std::vector<elt> table;  // row-major, table[a * order + b] = a * b
  std::vector<elt> inverse;
  std::vector<int> element_order;
  std::string name;  // spec string when constructed from one
};

inline void validate_table(GroupData& g) {
  const int n = g.order;
  if (n <= 0) throw parse_error("group order must be positive");
  if ((int)g.table.size() != n * n) throw parse_error("Cayley table has wrong size");
  for (elt v : g.table)
    if (v >= n) throw parse_error("Cayley table entry out of range");
  if (g.identity >= n) throw parse_error("identity index out of range");

  const elt e = g.identity;
  for (elt a = 0; a < n; ++a) {
    if (g.table[e * n + a] != a || g.table[a * n + e] != a)
      throw error("identity row/column does not act trivially");
  }
  // Latin square: each row and column is a permutation.
  for (elt a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (elt b = 0; b < n; ++b) {
      elt rv = g.table[a * n + b], cv = g.table[b * n + a];
      if (row[rv] || col[cv]) throw error("Cayley table is not a Latin square");
      row[rv] = col[cv] = true;
    }
  }
  // Full associativity check; the order cap keeps this cubic scan cheap.
  for (elt a = 0; a < n; ++a)
    for (elt b = 0; b < n; ++b)
      for (elt c = 0; c < n; ++c)
        if (g.table[g.table[a * n + b] * n + c] != g.table[a * n + g.table[b * n + c]])
          throw error("non-associative table");

  g.inverse.assign(n, 0);
  for (elt a = 0; a < n; ++a) {
    bool found = false;
    for (elt b = 0; b < n; ++b)
      if (g.table[a * n + b] == e && g.table[b * n + a] == e) {
        g.inverse[a] = b;
        found = true;
        break;
      }
    if (!found) throw error("element without a two-sided inverse");
  }
  g.element_order.assign(n, 0);
  for (elt a = 0; a < n; ++a) {
    int k = 1;
    elt x = a;
    while (x != e) {
      x = g.table[x * n + a];
      ++k;
    }
    g.element_order[a] = k;
  }
}

}  // namespace detail

// A finite group given by a validated Cayley table.  Immutable; copies are
// cheap and share the table.  Two Group values denote the same object of the
// category iff they share storage (same()).
class Group {
 public:
  Group() = default;
  explicit Group(std::shared_ptr<const detail::GroupData> d) : d_(std::move(d)) {}

  int order() const { return d_->order; }
  elt identity() const { return d_->identity; }
  elt mul(elt a, elt b) const { return d_->table[a * d_->order + b]; }
  elt inv(elt a) const { return d_->inverse[a]; }
  elt conj(elt g, elt x) const { return mul(mul(g, x), inv(g)); }
  int element_order(elt a) const { return d_->element_order[a]; }
  const std::string& name() const { return d_->name; }
  const detail::GroupData* id() const { return d_.get(); }
  bool same(const Group& other) const { return d_.get() == other.d_.get(); }
  bool valid() const { return d_ != nullptr; }

  mask_t full_mask() const {
    return d_->order == 64 ? ~mask_t{0} : ((mask_t{1} << d_->order) - 1);
  }

 private:
  std::shared_ptr<const detail::GroupData> d_;
};

inline Group from_cayley_table(int order, elt identity, std::vector<elt> table,
                               std::string name = {}, int order_cap = kDefaultOrderCap) {
  if (order > order_cap) throw error("group order " + std::to_string(order) +
                                     " exceeds cap " + std::to_string(order_cap));
  auto d = std::make_shared<detail::GroupData>();
  d->order = order;
  d->identity = identity;
  d->table = std::move(table);
  d->name = std::move(name);
  detail::validate_table(*d);
  return Group(std::move(d));
}

// ---------------------------------------------------------------------------
// Named constructors

inline Group cyclic_group(int n, int order_cap = kDefaultOrderCap) {
  if (n < 1) throw parse_error("cyclic group order must be >= 1");
  std::vector<elt> t(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i * n + j] = elt((i + j) % n);
  return from_cayley_table(n, 0, std::move(t), "C" + std::to_string(n), order_cap);
}

inline Group trivial_group() { return cyclic_group(1); }

inline Group direct_product(const Group& f, const Group& g, int order_cap = kDefaultOrderCap) {
  const int nf = f.order(), ng = g.order(), n = nf * ng;
  // element (a, b) is encoded as a * |G| + b
  std::vector<elt> t(std::size_t(n) * n);
  for (int a = 0; a < nf; ++a)
    for (int b = 0; b < ng; ++b)
      for (int c = 0; c < nf; ++c)
        for (int d = 0; d < ng; ++d)
          t[std::size_t(a * ng + b) * n + (c * ng + d)] =
              elt(f.mul(a, c) * ng + g.mul(b, d));
  std::string nm = f.name().empty() || g.name().empty() ? std::string()
                                                        : f.name() + "x" + g.name();
  return from_cayley_table(n, elt(f.identity() * ng + g.identity()), std::move(t),
                           std::move(nm), order_cap);
}

// Dihedral group of ORDER n (n even).  "D8" is the symmetry group of the
// square.  D2 and D4 coincide with C2 and C2xC2.
inline Group dihedral_group(int n, int order_cap = kDefaultOrderCap) {
  if (n < 2 || n % 2 != 0) throw parse_error("dihedral order must be even and >= 2");
  const int m = n / 2;
  if (m == 1) return from_cayley_table(2, 0, {0, 1, 1, 0}, "D2", order_cap);
  if (m == 2)
    return from_cayley_table(4, 0,
                             {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0},
                             "D4", order_cap);
  // element (eps, k): rotation x -> eps ? k - x : k + x (mod m)
  auto enc = [m](int eps, int k) { return eps * m + ((k % m) + m) % m; };
  std::vector<elt> t(n * n);
  for (int e1 = 0; e1 < 2; ++e1)
    for (int k1 = 0; k1 < m; ++k1)
      for (int e2 = 0; e2 < 2; ++e2)
        for (int k2 = 0; k2 < m; ++k2) {
          // composition of maps: (first apply the right factor, then the left)
          int eps = e1 ^ e2;
          int k = e1 ? k1 - k2 : k1 + k2;
          t[std::size_t(enc(e1, k1)) * n + enc(e2, k2)] = elt(enc(eps, k));
        }
  return from_cayley_table(n, 0, std::move(t), "D" + std::to_string(n), order_cap);
}

inline Group symmetric_group(int n, int order_cap = kDefaultOrderCap) {
  if (n < 1) throw parse_error("symmetric group degree must be >= 1");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int ord = (int)perms.size();
  if (ord > order_cap) throw error("S" + std::to_string(n) + " exceeds order cap");
  std::map<std::vector<int>, elt> index;
  for (int i = 0; i < ord; ++i) index[perms[i]] = elt(i);
  std::vector<elt> t(std::size_t(ord) * ord);
  std::vector<int> c(n);
  for (int i = 0; i < ord; ++i)
    for (int j = 0; j < ord; ++j) {
      for (int x = 0; x < n; ++x) c[x] = perms[i][perms[j][x]];
      t[std::size_t(i) * ord + j] = index[c];
    }
  return from_cayley_table(ord, 0, std::move(t), "S" + std::to_string(n), order_cap);
}

inline Group quaternion_group(int order_cap = kDefaultOrderCap) {
  // 1, -1, i, -i, j, -j, k, -k
  auto mulq = [](int a, int b) {
    // represent q = s * u with sign s in {0,1} (0 for +) and unit u in {1,i,j,k} = {0,1,2,3}
    int sa = a & 1, ua = a >> 1, sb = b & 1, ub = b >> 1;
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    int u = unit[ua][ub];
    int s = sa ^ sb ^ sign[ua][ub];
    return (u << 1) | s;
  };
  std::vector<elt> t(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) t[a * 8 + b] = elt(mulq(a, b));
  return from_cayley_table(8, 0, std::move(t), "Q8", order_cap);
}

inline Group klein_four_group(int order_cap = kDefaultOrderCap) {
  return from_cayley_table(4, 0, {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0}, "V4",
                           order_cap);
}

// ---------------------------------------------------------------------------
// Group spec mini-language and Cayley documents

inline Group parse_cayley_document(const std::string& text, int order_cap = kDefaultOrderCap) {
  std::istringstream in(text);
  long order = 0, identity = 0;
  if (!(in >> order)) throw parse_error("Cayley document: missing order");
  if (order < 1 || order > order_cap) throw parse_error("Cayley document: bad order");
  if (!(in >> identity) || identity < 0 || identity >= order)
    throw parse_error("Cayley document: bad identity index");
  std::vector<elt> t;
  t.reserve(order * order);
  long v;
  while (in >> v) {
    if (v < 0 || v >= order) throw parse_error("Cayley document: entry out of range");
    t.push_back(elt(v));
  }
  if ((long)t.size() != order * order)
    throw parse_error("Cayley document: expected " + std::to_string(order * order) +
                      " table entries, got " + std::to_string(t.size()));
  return from_cayley_table((int)order, elt(identity), std::move(t), "", order_cap);
}

inline std::string cayley_document(const Group& g) {
  std::ostringstream out;
  out << g.order() << "\n" << g.identity() << "\n";
  for (elt a = 0; a < g.order(); ++a) {
    for (elt b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << "\n";
  }
  return out.str();
}

namespace detail {

inline Group parse_group_atom(const std::string& atom, int order_cap) {
  if (atom == "Q8") return quaternion_group(order_cap);
  if (atom == "V4") return klein_four_group(order_cap);
  if (atom.size() >= 2 && (atom[0] == 'C' || atom[0] == 'D' || atom[0] == 'S')) {
    for (std::size_t i = 1; i < atom.size(); ++i)
      if (!std::isdigit((unsigned char)atom[i]))
        throw parse_error("bad group spec atom: " + atom);
    int n = std::stoi(atom.substr(1));
    switch (atom[0]) {
      case 'C': return cyclic_group(n, order_cap);
      case 'D': return dihedral_group(n, order_cap);
      case 'S': return symmetric_group(n, order_cap);
    }
  }
  throw parse_error("bad group spec atom: " + atom);
}

}  // namespace detail

// Parses either a spec string ("C4", "D8", "S3", "Q8", "V4", "C2xC2xC3") or a
// whitespace-separated Cayley document (order, identity index, table rows).
inline Group make_group(const std::string& spec, int order_cap = kDefaultOrderCap) {
  std::string s = spec;
  // trim
  while (!s.empty() && std::isspace((unsigned char)s.front())) s.erase(s.begin());
  while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
  if (s.empty()) throw parse_error("empty group spec");
  if (std::isdigit((unsigned char)s[0]) || s.find_first_of(" \t\n") != std::string::npos)
    return parse_cayley_document(s, order_cap);

  std::vector<std::string> atoms;
  std::size_t pos = 0;
  while (pos != std::string::npos) {
    std::size_t x = s.find('x', pos);
    atoms.push_back(s.substr(pos, x == std::string::npos ? x : x - pos));
    pos = x == std::string::npos ? x : x + 1;
  }
  Group g = detail::parse_group_atom(atoms[0], order_cap);
  for (std::size_t i = 1; i < atoms.size(); ++i)
    g = direct_product(g, detail::parse_group_atom(atoms[i], order_cap), order_cap);
  if (g.name() != s) {
    // rebuild with the user's spec as the name
    auto d = std::make_shared<detail::GroupData>();
    d->order = g.order();
    d->identity = g.identity();
    d->table.resize(std::size_t(g.order()) * g.order());
    for (elt a = 0; a < g.order(); ++a)
      for (elt b = 0; b < g.order(); ++b) d->table[a * g.order() + b] = g.mul(a, b);
    d->name = s;
    detail::validate_table(*d);
    return Group(std::move(d));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Subgroups

struct Subgroup {
  Group parent;
  mask_t bits = 0;

  int size() const { return std::popcount(bits); }
  bool contains(elt a) const { return (bits >> a) & 1; }
  bool subset_of(const Subgroup& other) const { return (bits & ~other.bits) == 0; }

  std::vector<elt> elements() const {
    std::vector<elt> out;
    for (elt a = 0; a < parent.order(); ++a)
      if (contains(a)) out.push_back(a);
    return out;
  }

  bool operator==(const Subgroup& o) const {
    return parent.id() == o.parent.id() && bits == o.bits;
  }
  // sort by (size, bitset) within a common parent
  bool operator<(const Subgroup& o) const {
    if (size() != o.size()) return size() < o.size();
    return bits < o.bits;
  }
};

inline bool is_subgroup_mask(const Group& g, mask_t bits) {
  if (!((bits >> g.identity()) & 1)) return false;
  std::vector<elt> el;
  for (elt a = 0; a < g.order(); ++a)
    if ((bits >> a) & 1) el.push_back(a);
  for (elt a : el)
    for (elt b : el)
      if (!((bits >> g.mul(a, b)) & 1)) return false;
  return true;
}

inline mask_t closure_mask(const Group& g, mask_t seed) {
  mask_t cur = seed | (mask_t{1} << g.identity());
  for (;;) {
    mask_t next = cur;
    std::vector<elt> el;
    for (elt a = 0; a < g.order(); ++a)
      if ((cur >> a) & 1) el.push_back(a);
    for (elt a : el)
      for (elt b : el) next |= mask_t{1} << g.mul(a, b);
    if (next == cur) return cur;
    cur = next;
  }
}

inline Subgroup generated_subgroup(const Group& g, mask_t seed) {
  return Subgroup{g, closure_mask(g, seed)};
}

inline Subgroup trivial_subgroup(const Group& g) {
  return Subgroup{g, mask_t{1} << g.identity()};
}

inline Subgroup full_subgroup(const Group& g) { return Subgroup{g, g.full_mask()}; }

inline Subgroup make_subgroup(const Group& g, mask_t bits) {
  if (!is_subgroup_mask(g, bits)) throw error("bit mask is not a subgroup");
  Subgroup s{g, bits};
  if (g.order() % s.size() != 0) throw error("subgroup size does not divide group order");
  return s;
}

// All subgroups, each exactly once, sorted by (size, bitset).  Breadth-first
// closure over single-generator extensions, deduplicated by bitset.
inline std::vector<Subgroup> subgroups(const Group& g) {
  if (g.order() > kMaskCap) throw error("subgroup enumeration needs order <= 64");
  std::vector<mask_t> queue = {mask_t{1} << g.identity()};
  std::vector<mask_t> seen = queue;
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    mask_t h = queue[i];
    for (elt a = 0; a < g.order(); ++a) {
      if ((h >> a) & 1) continue;
      mask_t n = closure_mask(g, h | (mask_t{1} << a));
      auto it = std::lower_bound(seen.begin(), seen.end(), n);
      if (it == seen.end() || *it != n) {
        seen.insert(it, n);
        queue.push_back(n);
      }
    }
  }
  std::vector<Subgroup> out;
  out.reserve(queue.size());
  for (mask_t m : queue) out.push_back(Subgroup{g, m});
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_normal_in(const Subgroup& y, const Subgroup& b) {
  if (!y.subset_of(b)) return false;
  const Group& g = y.parent;
  for (elt v : b.elements()) {
    mask_t c = 0;
    for (elt u : y.elements()) c |= mask_t{1} << g.conj(v, u);
    if (c != y.bits) return false;
  }
  return true;
}

struct Section {
  Subgroup top;     // B
  Subgroup bottom;  // Y, normal in B
};

inline std::vector<Section> sections(const Group& g) {
  std::vector<Section> out;
  auto subs = subgroups(g);
  for (const auto& b : subs)
    for (const auto& y : subs)
      if (y.subset_of(b) && is_normal_in(y, b)) out.push_back(Section{b, y});
  return out;
}

inline Subgroup conjugate_subgroup(const Subgroup& s, elt g) {
  mask_t m = 0;
  for (elt a : s.elements()) m |= mask_t{1} << s.parent.conj(g, a);
  return Subgroup{s.parent, m};
}

// Partition of subgroups(G) into conjugacy classes.  Classes appear in order
// of their representative (the least bitset); each class is sorted.
inline std::vector<std::vector<Subgroup>> conjugacy_classes_of_subgroups(const Group& g) {
  auto subs = subgroups(g);
  std::vector<std::vector<Subgroup>> classes;
  std::vector<mask_t> seen;
  for (const auto& s : subs) {
    if (std::binary_search(seen.begin(), seen.end(), s.bits)) continue;
    std::vector<Subgroup> cls;
    for (elt x = 0; x < g.order(); ++x) {
      Subgroup c = conjugate_subgroup(s, x);
      if (std::find_if(cls.begin(), cls.end(),
                       [&](const Subgroup& t) { return t.bits == c.bits; }) == cls.end())
        cls.push_back(c);
    }
    std::sort(cls.begin(), cls.end());
    for (const auto& c : cls) {
      auto it = std::lower_bound(seen.begin(), seen.end(), c.bits);
      seen.insert(it, c.bits);
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

inline std::vector<std::vector<elt>> conjugacy_classes_of_elements(const Group& g) {
  std::vector<std::vector<elt>> classes;
  std::vector<bool> seen(g.order(), false);
  for (elt a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    std::vector<elt> cls;
    for (elt x = 0; x < g.order(); ++x) {
      elt c = g.conj(x, a);
      if (!seen[c]) {
        seen[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Group maps

struct GroupMap {
  Group codomain;
  Group domain;
  std::vector<elt> images;  // one per domain element

  elt operator()(elt a) const { return images[a]; }

  bool is_homomorphism() const {
    for (elt a = 0; a < domain.order(); ++a)
      for (elt b = 0; b < domain.order(); ++b)
        if (images[domain.mul(a, b)] != codomain.mul(images[a], images[b])) return false;
    return true;
  }
  bool injective() const {
    std::vector<bool> hit(codomain.order(), false);
    for (elt v : images) {
      if (hit[v]) return false;
      hit[v] = true;
    }
    return true;
  }
  bool surjective() const {
    std::vector<bool> hit(codomain.order(), false);
    for (elt v : images) hit[v] = true;
    return std::find(hit.begin(), hit.end(), false) == hit.end();
  }
  mask_t image_mask() const {
    mask_t m = 0;
    for (elt v : images) m |= mask_t{1} << v;
    return m;
  }
  mask_t kernel_mask() const {
    mask_t m = 0;
    for (elt a = 0; a < domain.order(); ++a)
      if (images[a] == codomain.identity()) m |= mask_t{1} << a;
    return m;
  }
  bool operator==(const GroupMap& o) const {
    return codomain.id() == o.codomain.id() && domain.id() == o.domain.id() &&
           images == o.images;
  }
};

inline GroupMap identity_map(const Group& g) {
  GroupMap m{g, g, std::vector<elt>(g.order())};
  for (elt a = 0; a < g.order(); ++a) m.images[a] = a;
  return m;
}

// (f o g)(x) = f(g(x))
inline GroupMap compose(const GroupMap& f, const GroupMap& g) {
  if (!f.domain.same(g.codomain)) throw error("compose: domain/codomain mismatch");
  GroupMap m{f.codomain, g.domain, std::vector<elt>(g.domain.order())};
  for (elt a = 0; a < g.domain.order(); ++a) m.images[a] = f.images[g.images[a]];
  return m;
}

inline GroupMap inverse_map(const GroupMap& f) {
  if (!f.injective() || !f.surjective()) throw error("inverse_map: not an isomorphism");
  GroupMap m{f.domain, f.codomain, std::vector<elt>(f.codomain.order())};
  for (elt a = 0; a < f.domain.order(); ++a) m.images[f.images[a]] = a;
  return m;
}

struct ProductWithInjections {
  Group product;
  GroupMap left;   // product <- F
  GroupMap right;  // product <- G
};

inline ProductWithInjections direct_product_with_injections(
    const Group& f, const Group& g, int order_cap = kDefaultOrderCap) {
  Group p = direct_product(f, g, order_cap);
  GroupMap left{p, f, std::vector<elt>(f.order())};
  GroupMap right{p, g, std::vector<elt>(g.order())};
  for (elt a = 0; a < f.order(); ++a) left.images[a] = elt(a * g.order() + g.identity());
  for (elt b = 0; b < g.order(); ++b) right.images[b] = elt(f.identity() * g.order() + b);
  return ProductWithInjections{std::move(p), std::move(left), std::move(right)};
}

enum class HomFilter { All, Epi, Iso };

namespace detail {

// Small deterministic generating set: scan elements in index order, keep the
// ones that enlarge the closure.
inline std::vector<elt> generating_set(const Group& g) {
  std::vector<elt> gens;
  mask_t cur = mask_t{1} << g.identity();
  for (elt a = 0; a < g.order(); ++a) {
    if ((cur >> a) & 1) continue;
    gens.push_back(a);
    cur = closure_mask(g, cur | (mask_t{1} << a));
    if (cur == g.full_mask()) break;
  }
  return gens;
}

// Expresses every element of g as a product word in the generators:
// word[x] = (parent, generator-index) with x = parent * gens[gi].
struct Words {
  std::vector<elt> order;                      // BFS discovery order
  std::vector<std::pair<elt, int>> derivation;  // by element; (-1 marker via int)
};

inline Words element_words(const Group& g, const std::vector<elt>& gens) {
  Words w;
  w.derivation.assign(g.order(), {0, -1});
  std::vector<bool> seen(g.order(), false);
  elt e = g.identity();
  seen[e] = true;
  w.order.push_back(e);
  for (std::size_t i = 0; i < w.order.size(); ++i) {
    elt x = w.order[i];
    for (int gi = 0; gi < (int)gens.size(); ++gi) {
      elt y = g.mul(x, gens[gi]);
      if (!seen[y]) {
        seen[y] = true;
        w.derivation[y] = {x, gi};
        w.order.push_back(y);
      }
    }
  }
  return w;
}

template <class Visit>
inline void enumerate_homomorphisms(const Group& e, const Group& l, HomFilter filter,
                                    const Visit& visit) {
  // maps FROM l INTO e
  auto gens = generating_set(l);
  auto words = element_words(l, gens);
  const int k = (int)gens.size();
  std::vector<elt> choice(k, 0);
  std::vector<elt> img(l.order(), 0);

  auto build_and_check = [&]() -> bool {
    img[l.identity()] = e.identity();
    for (elt x : words.order) {
      auto [p, gi] = words.derivation[x];
      if (gi >= 0) img[x] = e.mul(img[p], choice[gi]);
    }
    for (elt a = 0; a < l.order(); ++a)
      for (elt b = 0; b < l.order(); ++b)
        if (img[l.mul(a, b)] != e.mul(img[a], img[b])) return false;
    return true;
  };

  // odometer over image tuples, lexicographic, with an order-divisibility prune
  std::vector<std::vector<elt>> candidates(k);
  for (int i = 0; i < k; ++i) {
    for (elt x = 0; x < e.order(); ++x)
      if (l.element_order(gens[i]) % e.element_order(x) == 0) candidates[i].push_back(x);
    if (candidates[i].empty()) return;
  }
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    for (int i = 0; i < k; ++i) choice[i] = candidates[i][idx[i]];
    if (build_and_check()) {
      bool keep = true;
      GroupMap m{e, l, img};
      if (filter == HomFilter::Epi) keep = m.surjective();
      if (filter == HomFilter::Iso) keep = m.injective() && m.surjective();
      if (keep && !visit(m)) return;
    }
    int i = k - 1;
    while (i >= 0 && ++idx[i] == candidates[i].size()) idx[i--] = 0;
    if (i < 0) break;
  }
}

}  // namespace detail

// All homomorphisms from L into E under the filter; "Epi" means maps from L
// onto E.  Deterministic enumeration order.
inline std::vector<GroupMap> homomorphisms(const Group& e, const Group& l,
                                           HomFilter filter = HomFilter::All) {
  std::vector<GroupMap> out;
  detail::enumerate_homomorphisms(e, l, filter, [&](const GroupMap& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

inline std::vector<GroupMap> epimorphisms(const Group& e, const Group& l) {
  return homomorphisms(e, l, HomFilter::Epi);
}

inline std::optional<GroupMap> is_isomorphic(const Group& g, const Group& h) {
  if (g.order() != h.order()) return std::nullopt;
  // cheap invariant: element order census
  std::vector<int> cg, ch;
  for (elt a = 0; a < g.order(); ++a) cg.push_back(g.element_order(a));
  for (elt a = 0; a < h.order(); ++a) ch.push_back(h.element_order(a));
  std::sort(cg.begin(), cg.end());
  std::sort(ch.begin(), ch.end());
  if (cg != ch) return std::nullopt;
  std::optional<GroupMap> found;
  detail::enumerate_homomorphisms(g, h, HomFilter::Iso, [&](const GroupMap& m) {
    found = m;
    return false;  // stop at the first
  });
  return found;
}

// Aut(E) as a group under composition, together with the underlying maps:
// elements[i] is the automorphism realizing index i of the Cayley table.
struct AutGroup {
  Group group;
  std::vector<GroupMap> elements;
};

inline AutGroup automorphisms(const Group& e) {
  auto isos = homomorphisms(e, e, HomFilter::Iso);
  const int n = (int)isos.size();
  std::map<std::vector<elt>, elt> index;
  for (int i = 0; i < n; ++i) index[isos[i].images] = elt(i);
  elt id_idx = index.at(identity_map(e).images);
  std::vector<elt> t(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t[std::size_t(i) * n + j] = index.at(compose(isos[i], isos[j]).images);
  std::string nm = e.name().empty() ? std::string() : "Aut(" + e.name() + ")";
  // Aut groups may exceed the subgroup-mask cap; allow any order here.
  Group g = from_cayley_table(n, id_idx, std::move(t), nm, 1 << 14);
  return AutGroup{g, std::move(isos)};
}

// ---------------------------------------------------------------------------
// Subgroups viewed as groups, and quotients

struct SubgroupAsGroup {
  Group group;
  std::vector<elt> elements;       // new index -> parent element
  std::vector<int> index_in;       // parent element -> new index, -1 outside
  GroupMap inclusion;              // parent <- group
};

inline SubgroupAsGroup as_group(const Subgroup& s) {
  auto el = s.elements();
  const int n = (int)el.size();
  std::vector<int> back(s.parent.order(), -1);
  for (int i = 0; i < n; ++i) back[el[i]] = i;
  std::vector<elt> t(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = back[s.parent.mul(el[i], el[j])];
      if (p < 0) throw error("as_group: not closed");
      t[std::size_t(i) * n + j] = elt(p);
    }
  Group g = from_cayley_table(n, elt(back[s.parent.identity()]), std::move(t));
  GroupMap inc{s.parent, g, el};
  return SubgroupAsGroup{g, el, std::move(back), std::move(inc)};
}

struct Quotient {
  Group group;
  std::vector<int> coset_index;  // parent element -> coset index, -1 outside B
  SubgroupAsGroup top;           // B as a group
  GroupMap projection;           // group <- top.group
};

inline Quotient quotient(const Subgroup& b, const Subgroup& y) {
  if (!y.subset_of(b) || !is_normal_in(y, b)) throw error("quotient: Y not normal in B");
  const Group& g = b.parent;
  std::vector<int> coset(g.order(), -1);
  std::vector<elt> reps;
  for (elt x : b.elements()) {
    if (coset[x] >= 0) continue;
    int c = (int)reps.size();
    reps.push_back(x);
    for (elt u : y.elements()) coset[g.mul(x, u)] = c;
  }
  const int n = (int)reps.size();
  std::vector<elt> t(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[std::size_t(i) * n + j] = elt(coset[g.mul(reps[i], reps[j])]);
  Group q = from_cayley_table(n, elt(coset[g.identity()]), std::move(t));
  SubgroupAsGroup top = as_group(b);
  GroupMap proj{q, top.group, std::vector<elt>(top.group.order())};
  for (elt i = 0; i < top.group.order(); ++i) proj.images[i] = elt(coset[top.elements[i]]);
  return Quotient{q, std::move(coset), std::move(top), std::move(proj)};
}

}  // namespace starcat
