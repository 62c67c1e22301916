#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "starcat/algebra.hpp"
#include "starcat/linalg.hpp"

namespace starcat {

enum class TauRoute { Defining, KernelSum };

// The epimorphism-indexed matrix of tau values at the diagonal of E.
struct TMatrix {
  Group e, l;
  std::vector<GroupMap> epis;  // rows and columns, in enumeration order
  Matrix<Scalar> entries;
};

inline TMatrix t_matrix(const Context& ctx, const Group& e, const Group& l,
                        TauRoute route = TauRoute::KernelSum) {
  auto epis = epimorphisms(e, l);
  if (epis.empty()) throw error("t_matrix: epi(E, L) is empty");
  const int n = (int)epis.size();
  TMatrix t{e, l, epis, Matrix<Scalar>(n, n)};
  PairCache& pc = ctx.pair_cache();

  if (route == TauRoute::Defining) {
    Mor k = delta(pc, e);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t.entries.at(i, j) = ctx.tau_bruteforce(k, triangle_left(pc, epis[i]),
                                                triangle_right(pc, epis[j]));
    return t;
  }

  // kernel-sum route: sum over S <= L whose (phi, psi)-image covers the
  // diagonal of E, weighted by moeb(S, L) ell(ker phi  cap  S  cap  ker psi)
  const SubgroupLattice& lat = ctx.lattice_of(l);
  int top = lat.index_of(l.full_mask());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const GroupMap& phi = epis[i];
      const GroupMap& psi = epis[j];
      mask_t kphi = phi.kernel_mask(), kpsi = psi.kernel_mask();
      Scalar acc;
      for (int si = 0; si < lat.size(); ++si) {
        const Subgroup& s = lat.at(si);
        std::vector<bool> hit(e.order(), false);
        for (elt x : s.elements())
          if (phi.images[x] == psi.images[x]) hit[phi.images[x]] = true;
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) continue;
        mpq_class mm(lat.moebius(si, top));
        if (mm == 0) continue;
        Scalar term =
            ctx.ell_of((unsigned long)std::popcount(kphi & s.bits & kpsi));
        term *= Scalar(mm);
        acc += term;
      }
      t.entries.at(i, j) = acc;
    }
  return t;
}

inline bool is_scalar_multiple_of_identity(const TMatrix& t, const Scalar& c) {
  for (int i = 0; i < t.entries.rows; ++i)
    for (int j = 0; j < t.entries.cols; ++j)
      if (t.entries.at(i, j) != (i == j ? c : Scalar(0))) return false;
  return true;
}

// --------------------------------------------------------------------------
// Determinant audit

struct DeterminantAudit {
  Scalar det;
  bool invertible = false;
  int size = 0;
  long epi_count = 0;
  int d = 0;  // len(|L| / |E|)
  int degree = -1;
  bool monic = false;
  long degree_d_times_epi = 0;
  long degree_d_pow_epi = 0;
  bool matches_d_times_epi = false;
  bool matches_d_pow_epi = false;
  bool diagonal_monic_of_degree_d = true;
  bool offdiag_degree_below_d = true;
};

inline Polynomial require_polynomial(const Scalar& s) {
  if (!(s.den() == Polynomial(1)))
    throw error("expected a polynomial scalar (generic weight)");
  return s.num();
}

inline DeterminantAudit determinant_audit(const TMatrix& t) {
  DeterminantAudit out;
  out.size = t.entries.rows;
  out.epi_count = (long)t.epis.size();
  out.d = len((unsigned long)(t.l.order() / t.e.order()));

  Matrix<Polynomial> m(out.size, out.size);
  for (int i = 0; i < out.size; ++i)
    for (int j = 0; j < out.size; ++j) {
      Polynomial p = require_polynomial(t.entries.at(i, j));
      m.at(i, j) = p;
      if (i == j) {
        if (p.is_zero() || p.degree() != out.d || !p.is_monic())
          out.diagonal_monic_of_degree_d = false;
      } else if (!p.is_zero() && p.degree() >= out.d) {
        out.offdiag_degree_below_d = false;
      }
    }
  Polynomial det = bareiss_determinant(std::move(m));
  out.det = Scalar(det);
  out.invertible = !det.is_zero();
  out.degree = det.is_zero() ? -1 : det.degree();
  out.monic = !det.is_zero() && det.is_monic();
  out.degree_d_times_epi = (long)out.d * out.epi_count;
  out.degree_d_pow_epi = 1;
  for (long i = 0; i < out.epi_count; ++i) out.degree_d_pow_epi *= out.d;
  out.matches_d_times_epi = out.degree == out.degree_d_times_epi;
  out.matches_d_pow_epi = out.degree == out.degree_d_pow_epi;
  return out;
}

// --------------------------------------------------------------------------
// Semisimplicity certification

enum class Verdict { CertifiedSemisimple, CertifiedNotSemisimple, Inconclusive };

inline const char* verdict_text(Verdict v) {
  switch (v) {
    case Verdict::CertifiedSemisimple: return "certified-semisimple";
    case Verdict::CertifiedNotSemisimple: return "certified-not-semisimple";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "";
}

struct PairCertificate {
  std::string e_spec, l_spec;
  int size = 0;
  std::string det;
  bool invertible = false;
  int det_degree = -1;      // generic weight only
  bool det_monic = false;   // generic weight only
  bool cyclic_pair = false;
  // for cyclic pairs: T is a scalar multiple of the identity; the scalar is
  // monic of degree len(|L|/|E|) but need not equal ell(|L|/|E|) itself
  bool scalar_identity = false;
  std::string diagonal_scalar;
  bool diagonal_monic_degree_len = false;
  bool diagonal_equals_ell_kernel = false;
  std::vector<std::vector<std::string>> matrix;  // entries in scalar text form
};

// The (E, L) pairs relevant to the criterion: L a subgroup of a member of K
// and E a quotient of L, both up to isomorphism, deduplicated.
inline std::vector<std::pair<Group, Group>> certificate_pairs(const Context& ctx) {
  std::vector<Group> ls;
  for (int gi = 0; gi < ctx.size(); ++gi)
    for (const auto& s : subgroups(ctx.group(gi))) {
      Group l = ctx.catalog().canonical(as_group(s).group);
      bool seen = false;
      for (const auto& known : ls) seen |= known.same(l);
      if (!seen) ls.push_back(l);
    }
  std::vector<std::pair<Group, Group>> out;
  for (const auto& l : ls) {
    std::vector<Group> es;
    for (const auto& n : subgroups(l)) {
      if (!is_normal_in(n, full_subgroup(l))) continue;
      Group e = ctx.catalog().canonical(quotient(full_subgroup(l), n).group);
      bool seen = false;
      for (const auto& known : es) seen |= known.same(e);
      if (!seen) {
        es.push_back(e);
        out.emplace_back(e, l);
      }
    }
  }
  return out;
}

struct TCertificateReport {
  std::vector<PairCertificate> pairs;
  bool all_invertible = true;
};

inline bool group_is_cyclic(const Group& g) {
  for (elt a = 0; a < g.order(); ++a)
    if (g.element_order(a) == g.order()) return true;
  return false;
}

inline TCertificateReport certify_t_matrices(const Context& ctx,
                                             TauRoute route = TauRoute::KernelSum) {
  TCertificateReport out;
  for (const auto& [e, l] : certificate_pairs(ctx)) {
    TMatrix t = t_matrix(ctx, e, l, route);
    PairCertificate c;
    c.e_spec = e.name().empty() ? "order" + std::to_string(e.order()) : e.name();
    c.l_spec = l.name().empty() ? "order" + std::to_string(l.order()) : l.name();
    c.size = t.entries.rows;
    c.matrix.resize(t.entries.rows);
    for (int i = 0; i < t.entries.rows; ++i)
      for (int j = 0; j < t.entries.cols; ++j)
        c.matrix[i].push_back(t.entries.at(i, j).text());
    c.cyclic_pair = group_is_cyclic(e) && group_is_cyclic(l);
    if (c.cyclic_pair) {
      const Scalar& diag = t.entries.at(0, 0);
      c.scalar_identity = is_scalar_multiple_of_identity(t, diag);
      c.diagonal_scalar = diag.text();
      c.diagonal_equals_ell_kernel =
          diag == ctx.ell_of((unsigned long)(l.order() / e.order()));
      if (ctx.ell_spec().mode == EllSpec::Mode::Generic && !diag.is_zero()) {
        Polynomial p = require_polynomial(diag);
        c.diagonal_monic_degree_len =
            p.is_monic() && p.degree() == len((unsigned long)(l.order() / e.order()));
      }
    }
    if (ctx.ell_spec().mode == EllSpec::Mode::Generic) {
      DeterminantAudit audit = determinant_audit(t);
      c.det = audit.det.text();
      c.invertible = audit.invertible;
      c.det_degree = audit.degree;
      c.det_monic = audit.monic;
    } else {
      // rational entries: plain rank decides invertibility
      c.invertible = rank_of(t.entries) == t.entries.rows;
      c.det = c.invertible ? "nonzero" : "0";
    }
    out.all_invertible = out.all_invertible && c.invertible;
    out.pairs.push_back(std::move(c));
  }
  return out;
}

// --------------------------------------------------------------------------
// Gram (trace form) analysis

inline std::vector<BasisKey> global_basis(const Context& ctx) {
  std::vector<BasisKey> out;
  for (int f = 0; f < ctx.size(); ++f)
    for (int g = 0; g < ctx.size(); ++g)
      for (const auto& m : ctx.basis_mors(f, g)) out.push_back(ctx.key_of(m));
  return out;
}

// G(i, j) = trace of left multiplication by e_i e_j on the whole algebra
inline Matrix<Scalar> gram_matrix(const Context& ctx) {
  auto basis = global_basis(ctx);
  const int n = (int)basis.size();
  std::map<BasisKey, int> index;
  for (int i = 0; i < n; ++i) index[basis[i]] = i;

  // traces of left multiplication by each basis element
  std::vector<Scalar> trace(n);
  for (int u = 0; u < n; ++u) {
    const BasisKey& ku = basis[u];
    if (ku.cod != ku.dom) continue;  // off-object elements have trace zero
    Mor mu = ctx.mor(ku);
    Scalar acc;
    for (int k = 0; k < n; ++k) {
      const BasisKey& kk = basis[k];
      if (kk.cod != ku.dom) continue;
      Mor mk = ctx.mor(kk);
      if (star(ctx.pair_cache(), mu, mk).bits == mk.bits) acc += ctx.sigma(mu, mk);
    }
    trace[u] = acc;
  }

  Matrix<Scalar> g(n, n);
  for (int i = 0; i < n; ++i) {
    const BasisKey& ki = basis[i];
    Mor mi = ctx.mor(ki);
    for (int j = 0; j < n; ++j) {
      const BasisKey& kj = basis[j];
      if (ki.dom != kj.cod) continue;  // product vanishes
      Mor mj = ctx.mor(kj);
      Mor w = star(ctx.pair_cache(), mi, mj);
      int widx = index.at(BasisKey{ki.cod, kj.dom, w.bits});
      if (trace[widx].is_zero()) continue;
      g.at(i, j) = ctx.sigma(mi, mj) * trace[widx];
    }
  }
  return g;
}

struct GramResult {
  std::string mode;  // "rational" | "symbolic" | "specialized"
  int dim = 0;
  int rank = -1;  // rational/symbolic modes
  std::vector<std::pair<std::string, int>> point_ranks;
  std::vector<AlgebraElement> radical;  // exact kernel basis when available
  bool definitive = false;              // rank decides semisimplicity outright
  bool full_rank = false;
};

inline GramResult gram_radical_exact(const Context& ctx, int symbolic_cap = 40) {
  if (!ctx.ell_spec().is_rational_valued() && ctx.dimension() > symbolic_cap)
    throw error("symbolic Gram analysis is limited to dimension " +
                std::to_string(symbolic_cap) + "; use specialization points instead");
  GramResult out;
  Matrix<Scalar> g = gram_matrix(ctx);
  out.dim = g.rows;
  out.mode = ctx.ell_spec().is_rational_valued() ? "rational" : "symbolic";
  out.definitive = true;

  auto basis = global_basis(ctx);
  auto kernel = kernel_basis(g);
  out.rank = out.dim - (int)kernel.size();
  out.full_rank = kernel.empty();
  for (const auto& v : kernel) {
    AlgebraElement e(&ctx, BasisKind::Square);
    for (int i = 0; i < out.dim; ++i) e.add(basis[i], v[i]);
    out.radical.push_back(std::move(e));
  }
  return out;
}

// Ranks at rational specialization points (distinct large primes per
// variable, drawn from the given seed).  Full rank at any point certifies
// generic full rank.
inline GramResult gram_radical_at_points(const Context& ctx, std::uint64_t seed,
                                         int npoints = 3) {
  GramResult out;
  Matrix<Scalar> g = gram_matrix(ctx);
  out.dim = g.rows;
  out.mode = "specialized";
  std::set<unsigned> vars;
  for (const auto& s : g.a) {
    for (unsigned p : s.num().variables()) vars.insert(p);
    for (unsigned p : s.den().variables()) vars.insert(p);
  }
  static const long kPrimes[] = {1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049,
                                 1051, 1061, 1063, 1069, 1087, 1091, 1093, 1097};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<int> pick(0, 15);
  for (int n = 0; n < npoints; ++n) {
    std::map<unsigned, mpq_class> point;
    std::set<long> used;
    for (unsigned v : vars) {
      long p = kPrimes[pick(rng)];
      while (used.count(p)) p = kPrimes[pick(rng)];
      used.insert(p);
      point[v] = mpq_class(p);
    }
    Matrix<Scalar> gp(g.rows, g.cols);
    for (int i = 0; i < g.rows; ++i)
      for (int j = 0; j < g.cols; ++j)
        gp.at(i, j) = Scalar(specialize(g.at(i, j), point));
    int r = rank_of(gp);
    std::string ptext;
    for (const auto& [v, val] : point)
      ptext += (ptext.empty() ? "" : ",") + ("l" + std::to_string(v)) + "=" + val.get_str();
    out.point_ranks.emplace_back(ptext, r);
    out.full_rank = out.full_rank || r == out.dim;
  }
  return out;
}

// --------------------------------------------------------------------------
// Combined report

struct SemisimplicityReport {
  std::string context_id;
  TCertificateReport t;
  std::optional<GramResult> gram;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> witnesses;
};

inline SemisimplicityReport certify_semisimple(const Context& ctx,
                                               std::uint64_t seed = 0,
                                               int symbolic_cap = 40) {
  SemisimplicityReport rep;
  rep.context_id = ctx.id_text();
  rep.t = certify_t_matrices(ctx);

  long dim = ctx.dimension();
  bool exact_gram = ctx.ell_spec().is_rational_valued() || dim <= symbolic_cap;
  rep.gram = exact_gram ? gram_radical_exact(ctx) : gram_radical_at_points(ctx, seed);

  if (rep.t.all_invertible) {
    rep.verdict = Verdict::CertifiedSemisimple;
    if (rep.gram->definitive && !rep.gram->full_rank)
      throw error("internal inconsistency: invertible T matrices but degenerate trace form");
  } else if (rep.gram->definitive) {
    if (rep.gram->full_rank) {
      rep.verdict = Verdict::CertifiedSemisimple;
    } else {
      rep.verdict = Verdict::CertifiedNotSemisimple;
      for (const auto& r : rep.gram->radical) rep.witnesses.push_back(r.text());
    }
  } else {
    rep.verdict =
        rep.gram->full_rank ? Verdict::CertifiedSemisimple : Verdict::Inconclusive;
  }
  return rep;
}

// --------------------------------------------------------------------------
// Centre of the algebra

inline std::vector<AlgebraElement> center_basis(const Context& ctx) {
  auto basis = global_basis(ctx);
  const int n = (int)basis.size();
  std::map<BasisKey, int> index;
  for (int i = 0; i < n; ++i) index[basis[i]] = i;

  // rows: for each generator j and each output key m, sum_k z_k (c_kj^m - c_jk^m) = 0
  std::vector<std::vector<Scalar>> rows;
  for (int j = 0; j < n; ++j) {
    std::map<int, std::vector<std::pair<int, Scalar>>> row_entries;  // m -> (k, coeff)
    for (int k = 0; k < n; ++k) {
      const BasisKey& kk = basis[k];
      const BasisKey& kj = basis[j];
      if (kk.dom == kj.cod) {
        Mor a = ctx.mor(kk), b = ctx.mor(kj);
        Mor w = star(ctx.pair_cache(), a, b);
        int m = index.at(BasisKey{kk.cod, kj.dom, w.bits});
        row_entries[m].emplace_back(k, ctx.sigma(a, b));
      }
      if (kj.dom == kk.cod) {
        Mor a = ctx.mor(kj), b = ctx.mor(kk);
        Mor w = star(ctx.pair_cache(), a, b);
        int m = index.at(BasisKey{kj.cod, kk.dom, w.bits});
        row_entries[m].emplace_back(k, -ctx.sigma(a, b));
      }
    }
    for (const auto& [m, entries] : row_entries) {
      std::vector<Scalar> row(n, Scalar(0));
      bool nonzero = false;
      for (const auto& [k, c] : entries) {
        row[k] += c;
        nonzero = nonzero || !row[k].is_zero();
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  Matrix<Scalar> m((int)rows.size(), n);
  for (int i = 0; i < (int)rows.size(); ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  std::vector<AlgebraElement> out;
  for (const auto& v : kernel_basis(m)) {
    AlgebraElement e(&ctx, BasisKind::Square);
    for (int i = 0; i < n; ++i) e.add(basis[i], v[i]);
    out.push_back(std::move(e));
  }
  return out;
}

// --------------------------------------------------------------------------
// The worked cyclic-prime example: explicit blocks of End(C_q)

struct BlockReport {
  unsigned q = 0;
  std::string ell_text;
  bool ok = true;
  std::vector<std::pair<std::string, int>> block_dims;
  std::vector<std::string> failures;
};

// dim of the right ideal x -> x b, as a subspace of the algebra
inline int right_ideal_dimension(const Context& ctx, const AlgebraElement& b) {
  auto basis = global_basis(ctx);
  const int n = (int)basis.size();
  std::map<BasisKey, int> index;
  for (int i = 0; i < n; ++i) index[basis[i]] = i;
  Matrix<Scalar> m(n, n);
  for (int i = 0; i < n; ++i) {
    AlgebraElement img =
        multiply(AlgebraElement::basis(ctx, BasisKind::Square, ctx.mor(basis[i])), b);
    for (const auto& [k, c] : img.entries()) m.at(index.at(k), i) = c;
  }
  return rank_of(m);
}

inline BlockReport verify_example_blocks(unsigned q, const EllSpec& spec) {
  if (q != 2 && q != 3)
    throw error("block verification needs rational characters: q must be 2 or 3");
  BlockReport rep;
  rep.q = q;
  rep.ell_text = spec.text();

  Context ctx({cyclic_group((int)q)}, spec);
  Scalar lambda = ctx.ell_of(q);
  if (lambda == Scalar(1))
    throw error("block formulas are undefined at ell(q) = 1");

  PairRef pg = ctx.pair(0, 0);
  mask_t m0 = mask_t{1} << pg->pack(0, 0);
  mask_t m01 = 0, m10 = 0;
  for (elt y = 0; y < q; ++y) m01 |= mask_t{1} << pg->pack(0, y);
  for (elt x = 0; x < q; ++x) m10 |= mask_t{1} << pg->pack(x, 0);
  mask_t m11 = pg->group().full_mask();

  auto sq_basis = [&](mask_t bits) {
    return AlgebraElement::basis(ctx, BasisKind::Square, Mor{pg, bits});
  };

  // r = lambda s_0 - s_01 - s_10 + s_11
  AlgebraElement r =
      lambda * sq_basis(m0) - sq_basis(m01) - sq_basis(m10) + sq_basis(m11);

  std::vector<AlgebraElement> blocks;
  std::vector<std::string> names;

  Scalar inv_lm1 = (lambda - Scalar(1)).inverse();
  blocks.push_back(inv_lm1 * r);
  names.push_back("b_{1,1}");

  // the power-map automorphisms Delta(d)
  std::vector<AlgebraElement> sd;
  for (unsigned d = 1; d < q; ++d) {
    mask_t bits = 0;
    for (elt x = 0; x < q; ++x) bits |= mask_t{1} << pg->pack(elt((d * x) % q), x);
    sd.push_back(sq_basis(bits));
  }

  Scalar inv_qm1 = Scalar((long)q - 1).inverse();
  AlgebraElement zeta_sum(&ctx, BasisKind::Square);
  for (const auto& s : sd) zeta_sum = zeta_sum + s;
  blocks.push_back(Scalar(-1) * (inv_lm1 * r) + inv_qm1 * zeta_sum);
  names.push_back("b_{G,zeta}");

  if (q == 3) {
    // the sign character of Aut(C3): chi(1) = 1, chi(2) = -1; chi(d^{-1}) = chi(d)
    AlgebraElement chi = inv_qm1 * (sd[0] - sd[1]);
    blocks.push_back(chi);
    names.push_back("b_{G,chi}");
  }

  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.failures.push_back(msg);
  };

  AlgebraElement unity = AlgebraElement::unity(ctx);
  AlgebraElement sum(&ctx, BasisKind::Square);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    sum = sum + blocks[i];
    if (multiply(blocks[i], blocks[i]) != blocks[i]) fail(names[i] + " is not idempotent");
    for (const auto& u : ctx.basis_mors(0, 0)) {
      AlgebraElement s = AlgebraElement::basis(ctx, BasisKind::Square, u);
      if (multiply(blocks[i], s) != multiply(s, blocks[i]))
        fail(names[i] + " is not central");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (!multiply(blocks[i], blocks[j]).is_zero() ||
          !multiply(blocks[j], blocks[i]).is_zero())
        fail(names[i] + " and " + names[j] + " are not orthogonal");
  }
  if (sum != unity) fail("blocks do not sum to the unity");

  std::vector<int> expect_dims = q == 2 ? std::vector<int>{4, 1} : std::vector<int>{4, 1, 1};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    int dim = right_ideal_dimension(ctx, blocks[i]);
    rep.block_dims.emplace_back(names[i], dim);
    if (dim != expect_dims[i])
      fail(names[i] + " has block dimension " + std::to_string(dim) + ", expected " +
           std::to_string(expect_dims[i]));
  }
  return rep;
}

}  // namespace starcat
