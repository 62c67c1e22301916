#pragma once

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "starcat/biset.hpp"
#include "starcat/semisimple.hpp"

namespace starcat {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::vector<std::string> groups;
  std::string ell = "generic";
  std::vector<std::string> tasks = {"all"};
  std::string output;          // file path; empty writes to stdout
  std::string format = "json";  // "json" | "text"
  std::string cache_dir;       // optional lattice cache directory
  std::uint64_t seed = 0;
  int order_cap = kDefaultOrderCap;
};

inline const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {
      "dims", "cocycle", "bases", "tau-oracle", "ssc",
      "blocks", "totient", "trivial", "gamma"};
  return names;
}

inline std::string explain_task(const std::string& name) {
  if (name == "dims")
    return "dims: recounts the algebra dimension two ways: by enumerating the "
           "subgroups of every pair F x G, and as sum over factor-group classes E of "
           "n_E^2 |Aut(E)|, where n_E counts sections B/Y of members isomorphic to E.";
  if (name == "cocycle")
    return "cocycle: exhaustively checks the 2-cocycle identity "
           "sigma(U, V*W) sigma(V, W) = sigma(U, V) sigma(U*V, W) over all composable "
           "morphism triples, which makes the twisted multiplication associative.";
  if (name == "bases")
    return "bases: checks that the square<->round basis changes are mutually inverse, "
           "that round products vanish without strong compatibility, that nonzero "
           "round products land on adequate subgroups, and that the round-basis route "
           "agrees with the square-basis route.";
  if (name == "tau-oracle")
    return "tau-oracle: compares the structure constants tau_K^{I,J} computed by the "
           "defining Moebius double sum against the reduced sum over the strongly "
           "compatible subposet, on every admissible triple.";
  if (name == "ssc")
    return "ssc: semisimplicity certification: invertibility of every "
           "epimorphism-indexed T_E^L matrix certifies semisimplicity; the trace-form "
           "(Gram) rank supplies the complementary exact or specialized certificate "
           "and radical witnesses when degenerate.";
  if (name == "blocks")
    return "blocks: for cyclic members of prime order q in {2, 3}, builds the explicit "
           "central idempotents b_{1,1} = r/(lambda-1), b_{G,zeta}, b_{G,chi}, and "
           "verifies idempotency, centrality, orthogonality, the sum to unity, and the "
           "block dimensions 4, 1(, 1).";
  if (name == "totient")
    return "totient: computes the multiplicative weight's totient by lattice Moebius "
           "inversion and by the double-sum route, checks they agree, and at "
           "ell(n) = n^d matches the brute-force census of generating d-tuples.";
  if (name == "trivial")
    return "trivial: verifies t_{1xB} t_{B'x1} = delta_{B,B'} phi(B) t_{1x1} for all "
           "B, B' and reports whether every phi(B) is nonzero; when so, the projective "
           "module on the idempotent s_{1x1} is certified simple.";
  if (name == "gamma")
    return "gamma: checks that the averaging map nu(d_U) = |G| bar_s_U / |U| is "
           "multiplicative on all basis pairs (which also proves associativity of the "
           "deformed biset composition), and at ell(n) = n that the structure "
           "constants are the double Burnside numbers via an independent orbit "
           "decomposition.";
  std::string valid;
  for (const auto& n : task_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw parse_error("unknown task '" + name + "'; valid tasks: " + valid + ", all");
}

// --------------------------------------------------------------------------
// Optional on-disk lattice cache

inline void sync_lattice_cache_dir(const Context& ctx, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  for (int gi = 0; gi < ctx.size(); ++gi) {
    SubgroupLattice& lat = ctx.lattice_cache().get_mutable(ctx.group(gi));
    fs::path path = fs::path(dir) / (ctx.group_spec(gi) + ".moebius.txt");
    if (fs::exists(path)) {
      std::ifstream in(path);
      std::stringstream buf;
      buf << in.rdbuf();
      if (auto table = parse_lattice_cache_text(buf.str(), lat))
        if (lat.adopt_moebius_table(*table)) continue;
    }
    std::ofstream out(path);
    out << lattice_cache_text(lat);
  }
}

// --------------------------------------------------------------------------
// Task implementations

struct TaskOutcome {
  std::string name;
  bool passed = true;
  json details = json::object();
};

namespace tasks_detail {

inline TaskOutcome run_dims(const Context& ctx) {
  TaskOutcome out{"dims"};
  auto census = dimension_census(ctx);
  out.passed = census.consistent();
  out.details["dim_by_subgroups"] = census.dim_by_subgroups;
  out.details["dim_by_seeds"] = census.dim_by_seeds;
  json seeds = json::array();
  for (const auto& [name, n, aut] : census.seeds)
    seeds.push_back(json{{"E", name}, {"n_E", n}, {"aut_order", aut}});
  out.details["seeds"] = seeds;
  return out;
}

inline TaskOutcome run_cocycle(const Context& ctx) {
  TaskOutcome out{"cocycle"};
  long checked = 0, failed = 0;
  for (int f = 0; f < ctx.size(); ++f)
    for (int g = 0; g < ctx.size(); ++g)
      for (int h = 0; h < ctx.size(); ++h)
        for (int i = 0; i < ctx.size(); ++i)
          for (const auto& u : ctx.basis_mors(f, g))
            for (const auto& v : ctx.basis_mors(g, h))
              for (const auto& w : ctx.basis_mors(h, i)) {
                Scalar lhs = ctx.sigma(u, star(ctx.pair_cache(), v, w)) * ctx.sigma(v, w);
                Scalar rhs = ctx.sigma(u, v) * ctx.sigma(star(ctx.pair_cache(), u, v), w);
                ++checked;
                if (lhs != rhs) ++failed;
              }
  out.passed = failed == 0;
  out.details["triples_checked"] = checked;
  out.details["failures"] = failed;
  return out;
}

inline TaskOutcome run_bases(const Context& ctx, std::uint64_t seed) {
  TaskOutcome out{"bases"};
  long fails = 0;

  // seeded random round trips
  std::mt19937_64 rng(seed ^ 0xb5ad4eceda1ce2a9ull);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int n = 0; n < 25; ++n) {
    AlgebraElement a(&ctx, BasisKind::Square);
    for (int f = 0; f < ctx.size(); ++f)
      for (int g = 0; g < ctx.size(); ++g)
        for (const auto& m : ctx.basis_mors(f, g)) {
          int c = coef(rng);
          if (c) a.add(ctx.key_of(m), Scalar(c));
        }
    if (a.to_round().to_square() != a) ++fails;
  }
  out.details["round_trips"] = 25;

  // pairwise round-product laws; exhaustive while the dimension is small
  bool exhaustive = ctx.dimension() <= 40;
  long pairs = 0;
  for (int f = 0; f < ctx.size(); ++f)
    for (int g = 0; g < ctx.size(); ++g)
      for (int h = 0; h < ctx.size(); ++h)
        for (const auto& i : ctx.basis_mors(f, g)) {
          for (const auto& j : ctx.basis_mors(g, h)) {
            if (!exhaustive && (pairs & 3) != 0) {
              ++pairs;
              continue;
            }
            ++pairs;
            AlgebraElement ti = AlgebraElement::basis(ctx, BasisKind::Round, i);
            AlgebraElement tj = AlgebraElement::basis(ctx, BasisKind::Round, j);
            AlgebraElement prod = multiply(ti, tj);
            if (!strongly_compatible(i, j) && !prod.is_zero()) ++fails;
            if (prod != multiply(ti.to_square(), tj.to_square()).to_round()) ++fails;
            if (!prod.is_zero()) {
              Mor w = star(ctx.pair_cache(), i, j);
              for (const auto& [k, c] : prod.entries()) {
                Mor km = ctx.mor(k);
                if ((km.bits & ~w.bits) != 0 || km.p1_top().bits != w.p1_top().bits ||
                    km.p2_top().bits != w.p2_top().bits)
                  ++fails;
              }
            }
          }
        }
  out.details["pairs_checked"] = pairs;
  out.details["exhaustive"] = exhaustive;
  out.details["failures"] = fails;
  out.passed = fails == 0;
  return out;
}

inline TaskOutcome run_tau_oracle(const Context& ctx) {
  TaskOutcome out{"tau-oracle"};
  long checked = 0, fails = 0;
  for (int f = 0; f < ctx.size(); ++f)
    for (int g = 0; g < ctx.size(); ++g)
      for (int h = 0; h < ctx.size(); ++h)
        for (const auto& i : ctx.basis_mors(f, g))
          for (const auto& j : ctx.basis_mors(g, h)) {
            if (!strongly_compatible(i, j)) continue;
            Mor w = star(ctx.pair_cache(), i, j);
            for (const auto& k : adequate_subgroups(ctx.pair_lattice(f, h), w)) {
              ++checked;
              if (ctx.tau_reduced(k, i, j) != ctx.tau_bruteforce(k, i, j)) ++fails;
            }
          }
  out.details["triples_checked"] = checked;
  out.details["failures"] = fails;
  out.passed = fails == 0;
  return out;
}

inline json gram_to_json(const GramResult& g) {
  json out;
  out["mode"] = g.mode;
  out["dim"] = g.dim;
  if (g.rank >= 0) out["rank"] = g.rank;
  if (!g.point_ranks.empty()) {
    json pts = json::array();
    for (const auto& [pt, r] : g.point_ranks) pts.push_back(json{{"point", pt}, {"rank", r}});
    out["point_ranks"] = pts;
  }
  if (!g.radical.empty()) {
    json rad = json::array();
    for (const auto& r : g.radical) rad.push_back(r.text());
    out["radical"] = rad;
  }
  return out;
}

inline TaskOutcome run_ssc(const Context& ctx, std::uint64_t seed) {
  TaskOutcome out{"ssc"};
  SemisimplicityReport rep = certify_semisimple(ctx, seed);
  out.details["verdict"] = verdict_text(rep.verdict);
  json pairs = json::array();
  for (const auto& p : rep.t.pairs) {
    json jp{{"E", p.e_spec}, {"L", p.l_spec}, {"size", p.size},
            {"det", p.det},  {"invertible", p.invertible}};
    if (ctx.ell_spec().mode == EllSpec::Mode::Generic) {
      jp["det_degree"] = p.det_degree;
      jp["det_monic"] = p.det_monic;
    }
    jp["matrix"] = p.matrix;
    if (p.cyclic_pair) {
      jp["cyclic_pair"] = true;
      jp["scalar_identity"] = p.scalar_identity;
      jp["diagonal"] = p.diagonal_scalar;
      jp["diagonal_equals_ell_kernel"] = p.diagonal_equals_ell_kernel;
      if (!p.scalar_identity) out.passed = false;
      if (ctx.ell_spec().mode == EllSpec::Mode::Generic) {
        jp["diagonal_monic_degree_len"] = p.diagonal_monic_degree_len;
        if (!p.diagonal_monic_degree_len) out.passed = false;
      }
    }
    pairs.push_back(jp);
  }
  out.details["t_matrices"] = pairs;
  out.details["all_invertible"] = rep.t.all_invertible;
  if (rep.gram) out.details["gram"] = gram_to_json(*rep.gram);
  if (!rep.witnesses.empty()) out.details["witnesses"] = rep.witnesses;
  // the verdict itself is a finding; the task fails only on inconsistencies
  return out;
}

inline TaskOutcome run_blocks(const Context& ctx) {
  TaskOutcome out{"blocks"};
  json reports = json::array();
  bool any = false;
  for (int gi = 0; gi < ctx.size(); ++gi) {
    const Group& g = ctx.group(gi);
    if (g.order() != 2 && g.order() != 3) continue;
    if (!group_is_cyclic(g)) continue;
    any = true;
    BlockReport rep = verify_example_blocks((unsigned)g.order(), ctx.ell_spec());
    json jr{{"q", rep.q}, {"ok", rep.ok}};
    json dims = json::array();
    for (const auto& [name, d] : rep.block_dims)
      dims.push_back(json{{"block", name}, {"dim", d}});
    jr["dims"] = dims;
    if (!rep.failures.empty()) jr["failures"] = rep.failures;
    reports.push_back(jr);
    out.passed = out.passed && rep.ok;
  }
  out.details["members_analyzed"] = reports;
  if (!any) out.details["note"] = "no cyclic member of order 2 or 3 in this context";
  return out;
}

inline TaskOutcome run_totient(const Context& ctx) {
  TaskOutcome out{"totient"};
  long fails = 0;
  json phis = json::array();
  for (int gi = 0; gi < ctx.size(); ++gi) {
    const Group& g = ctx.group(gi);
    if (ctx.varphi(g) != ctx.varphi_double_sum(g)) ++fails;
    for (const auto& b : subgroups(g)) {
      Scalar route_a = ctx.varphi(b);
      Scalar route_b = ctx.varphi(as_group(b).group);
      if (route_a != route_b) ++fails;
    }
    phis.push_back(json{{"group", ctx.group_spec(gi)}, {"phi", ctx.varphi(g).text()}});
  }
  out.details["phi"] = phis;

  // Hall census at ell(n) = n^d for the members (independent contexts)
  long hall_checked = 0;
  for (int d : {1, 2}) {
    Context power_ctx(ctx.groups(), EllSpec::power(d), ctx.order_cap());
    for (int gi = 0; gi < ctx.size(); ++gi) {
      const Group& g = ctx.group(gi);
      if (g.order() > 16) continue;
      ++hall_checked;
      if (power_ctx.varphi(g) !=
          Scalar(mpq_class(power_ctx.hall_generating_tuples(g, d))))
        ++fails;
    }
  }
  out.details["hall_census_checked"] = hall_checked;
  out.details["failures"] = fails;
  out.passed = fails == 0;
  return out;
}

inline TaskOutcome run_trivial(const Context& ctx) {
  TaskOutcome out{"trivial"};
  TrivialCertificate cert = trivial_module_certificate(ctx);
  out.passed = cert.identities_ok && cert.span_facts_ok;
  out.details["identities_ok"] = cert.identities_ok;
  out.details["span_facts_ok"] = cert.span_facts_ok;
  out.details["all_phi_nonzero"] = cert.all_nonzero;
  out.details["certificate"] = cert.certified ? "positive" : "withheld";
  json phis = json::array();
  for (const auto& p : cert.phis)
    phis.push_back(json{{"group", ctx.group_spec(p.group)},
                        {"subgroup_bits", p.subgroup_bits},
                        {"phi", p.phi},
                        {"nonzero", p.nonzero}});
  out.details["phi_values"] = phis;
  if (!cert.failures.empty()) out.details["failures"] = cert.failures;
  return out;
}

inline TaskOutcome run_gamma(const Context& ctx) {
  TaskOutcome out{"gamma"};
  Gamma gm(ctx);
  long checked = 0, fails = 0;
  for (int f = 0; f < ctx.size(); ++f)
    for (int g = 0; g < ctx.size(); ++g) {
      // identity law
      for (mask_t r : gm.reps(f, g)) {
        GammaElement d = gm.basis(f, g, r);
        if (gm.multiply(gm.identity_of(f), d) != d) ++fails;
        if (gm.multiply(d, gm.identity_of(g)) != d) ++fails;
      }
      for (int h = 0; h < ctx.size(); ++h)
        for (mask_t ur : gm.reps(f, g))
          for (mask_t vr : gm.reps(g, h)) {
            GammaElement du = gm.basis(f, g, ur), dv = gm.basis(g, h, vr);
            ++checked;
            if (gm.nu(gm.multiply(du, dv)) != multiply(gm.nu(du), gm.nu(dv))) ++fails;
          }
    }
  out.details["nu_pairs_checked"] = checked;
  // exportable structure-constant table, kept to contexts of modest size
  long total_classes = 0;
  for (int f = 0; f < ctx.size(); ++f)
    for (int g = 0; g < ctx.size(); ++g) total_classes += (long)gm.reps(f, g).size();
  if (total_classes <= 24) {
    json table = json::array();
    for (const auto& e : gamma_structure_constants(gm)) {
      json terms = json::array();
      for (const auto& [rep, c] : e.terms)
        terms.push_back(json{{"class", rep}, {"coeff", c}});
      table.push_back(json{{"cod", ctx.group_spec(e.f)},
                           {"mid", ctx.group_spec(e.g)},
                           {"dom", ctx.group_spec(e.h)},
                           {"u", e.u},
                           {"v", e.v},
                           {"terms", terms}});
    }
    out.details["structure_constants"] = table;
  }
  if (ctx.ell_spec().mode == EllSpec::Mode::Power && ctx.ell_spec().exponent == 1) {
    auto rep = gm.burnside_check();
    out.details["burnside_products_checked"] = rep.products_checked;
    out.details["burnside_ok"] = rep.ok;
    if (!rep.ok) ++fails;
  } else {
    out.details["burnside_ok"] = "skipped (needs ell(n) = n)";
  }
  out.details["failures"] = fails;
  out.passed = fails == 0;
  return out;
}

}  // namespace tasks_detail

struct RunResult {
  json report;
  std::string text;
  bool ok = true;
};

inline RunResult run(const RunConfig& config) {
  std::vector<Group> groups;
  for (const auto& spec : config.groups) groups.push_back(make_group(spec, config.order_cap));
  Context ctx(std::move(groups), EllSpec::parse(config.ell), config.order_cap);

  std::string cache_dir = config.cache_dir;
  if (cache_dir.empty())
    if (const char* env = std::getenv("STARCAT_CACHE_DIR")) cache_dir = env;
  if (!cache_dir.empty()) sync_lattice_cache_dir(ctx, cache_dir);

  std::vector<std::string> wanted = config.tasks;
  if (wanted.empty()) wanted = {"all"};
  std::vector<std::string> order;
  for (const auto& t : wanted) {
    if (t == "all") {
      for (const auto& n : task_names()) order.push_back(n);
    } else {
      explain_task(t);  // validates the name
      order.push_back(t);
    }
  }

  RunResult result;
  result.report["schema_version"] = 1;
  result.report["context"] =
      json{{"groups", config.groups}, {"ell", config.ell},
           {"seed", config.seed},     {"order_cap", config.order_cap}};
  json jtasks = json::array();

  std::ostringstream text;
  text << "context: " << ctx.id_text() << " seed=" << config.seed << "\n";
  for (const auto& name : order) {
    TaskOutcome t;
    try {
      if (name == "dims") t = tasks_detail::run_dims(ctx);
      else if (name == "cocycle") t = tasks_detail::run_cocycle(ctx);
      else if (name == "bases") t = tasks_detail::run_bases(ctx, config.seed);
      else if (name == "tau-oracle") t = tasks_detail::run_tau_oracle(ctx);
      else if (name == "ssc") t = tasks_detail::run_ssc(ctx, config.seed);
      else if (name == "blocks") t = tasks_detail::run_blocks(ctx);
      else if (name == "totient") t = tasks_detail::run_totient(ctx);
      else if (name == "trivial") t = tasks_detail::run_trivial(ctx);
      else if (name == "gamma") t = tasks_detail::run_gamma(ctx);
    } catch (const std::exception& e) {
      t.name = name;
      t.passed = false;
      t.details = json{{"error", e.what()}};
    }
    json jt;
    jt["name"] = t.name;
    jt["passed"] = t.passed;
    jt["details"] = t.details;
    jtasks.push_back(jt);
    result.ok = result.ok && t.passed;
    text << "task " << t.name << ": " << (t.passed ? "PASS" : "FAIL") << "\n";
    for (const auto& [k, v] : t.details.items())
      text << "  " << k << ": " << v.dump() << "\n";
  }
  result.report["tasks"] = jtasks;
  result.report["ok"] = result.ok;
  result.text = text.str();
  return result;
}

inline void write_run_result(const RunResult& result, const RunConfig& config) {
  std::string body =
      config.format == "text" ? result.text : result.report.dump(2) + "\n";
  if (config.output.empty()) {
    std::fputs(body.c_str(), stdout);
  } else {
    std::ofstream out(config.output);
    if (!out) throw error("cannot open output file " + config.output);
    out << body;
  }
}

}  // namespace starcat
