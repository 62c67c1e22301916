#include <catch2/catch_amalgamated.hpp>

#include "starcat/catalog.hpp"
#include "starcat/star.hpp"

using namespace starcat;

namespace {

struct Fixture {
  PairCache cache;
  LatticeCache lattices;
  GroupCatalog catalog;

  std::vector<Mor> morphisms(const Group& f, const Group& g) {
    PairRef pg = cache.get(f, g);
    std::vector<Mor> out;
    for (const auto& s : lattices.get(pg->group()).all()) out.push_back(Mor{pg, s.bits});
    return out;
  }

  Mor one_cross(const Group& f, const Group& g) {  // {1} x G in S(F, G)
    PairRef pg = cache.get(f, g);
    mask_t m = 0;
    for (elt y = 0; y < g.order(); ++y) m |= mask_t{1} << pg->pack(f.identity(), y);
    return Mor{pg, m};
  }
  Mor cross_one(const Group& f, const Group& g) {  // F x {1} in S(F, G)
    PairRef pg = cache.get(f, g);
    mask_t m = 0;
    for (elt x = 0; x < f.order(); ++x) m |= mask_t{1} << pg->pack(x, g.identity());
    return Mor{pg, m};
  }
  Mor trivial(const Group& f, const Group& g) {
    PairRef pg = cache.get(f, g);
    return Mor{pg, mask_t{1} << pg->pack(f.identity(), g.identity())};
  }
  Mor full(const Group& f, const Group& g) {
    PairRef pg = cache.get(f, g);
    return Mor{pg, pg->group().full_mask()};
  }

  // Cor-style factorization through the thorax, realized on the quotient group
  std::pair<Mor, Mor> factor_through_thorax(const Mor& u) {
    GoursatData d = goursat(u);
    const Group& t = d.left_q.group;
    std::vector<elt> ident(t.order());
    for (elt i = 0; i < t.order(); ++i) ident[i] = i;
    Mor x = from_quintuple(
        cache, make_goursat_data(d.p1_top, d.p1_bot, full_subgroup(t), trivial_subgroup(t),
                                 ident));
    Mor y = from_quintuple(
        cache, make_goursat_data(full_subgroup(t), trivial_subgroup(t), d.p2_top, d.p2_bot,
                                 d.iso.images));
    return {x, y};
  }
};

}  // namespace

TEST_CASE("goursat quintuples of the standard shapes") {
  Fixture fx;
  Group g = make_group("S3");

  auto d = goursat(delta(fx.cache, g));
  CHECK(d.p1_top.bits == g.full_mask());
  CHECK(d.p1_bot.size() == 1);
  CHECK(d.p2_bot.size() == 1);
  CHECK(d.p2_top.bits == g.full_mask());

  auto d2 = goursat(fx.one_cross(g, g));
  CHECK(d2.p1_top.size() == 1);
  CHECK(d2.p1_bot.size() == 1);
  CHECK(d2.p2_bot.bits == g.full_mask());
  CHECK(d2.p2_top.bits == g.full_mask());

  Group s = make_group("C4");
  auto d3 = goursat(fx.full(g, s));
  CHECK(d3.p1_top.bits == g.full_mask());
  CHECK(d3.p1_bot.bits == g.full_mask());
  CHECK(d3.p2_bot.bits == s.full_mask());
  CHECK(d3.p2_top.bits == s.full_mask());
}

TEST_CASE("from_quintuple realizes the classification") {
  Fixture fx;
  Group g = make_group("C2xC2");

  auto dd = goursat(delta(fx.cache, g));
  CHECK(from_quintuple(fx.cache, dd) == delta(fx.cache, g));
  CHECK(delta(fx.cache, g).size() == g.order());

  auto df = goursat(fx.full(g, g));
  CHECK(from_quintuple(fx.cache, df).bits == fx.cache.get(g, g)->group().full_mask());

  // the size-8 subgroup of C4 x C4 with both sections C4/C2
  Group c4 = make_group("C4");
  Subgroup c2 = subgroups(c4)[1];
  REQUIRE(c2.size() == 2);
  auto gd = make_goursat_data(full_subgroup(c4), c2, full_subgroup(c4), c2, {0, 1});
  Mor m = from_quintuple(fx.cache, gd);
  CHECK(m.size() == 8);  // |A| * |Y|
  CHECK(is_isomorphic(thorax_quotient(m).group, make_group("C2")).has_value());
}

TEST_CASE("goursat and from_quintuple are mutually inverse on the corpus") {
  Fixture fx;
  std::vector<Group> corpus = {make_group("C2"), make_group("C4"), make_group("S3"),
                               make_group("C6")};
  for (const auto& f : corpus)
    for (const auto& g : corpus)
      for (const auto& u : fx.morphisms(f, g)) {
        Mor back = from_quintuple(fx.cache, goursat(u));
        REQUIRE(back == u);
        // Goursat order formula
        REQUIRE(u.size() == u.p1_top().size() * u.p2_bot().size());
      }
}

TEST_CASE("star product identities") {
  Fixture fx;
  Group g = make_group("C4"), h = make_group("S3");

  for (const auto& v : fx.morphisms(g, h)) {
    CHECK(star(fx.cache, delta(fx.cache, g), v) == v);
    CHECK(star(fx.cache, v, delta(fx.cache, h)) == v);
  }

  // the graph of an isomorphism composes with its inverse to the diagonal
  Group v4 = make_group("C2xC2");
  for (const auto& th : automorphisms(v4).elements) {
    Mor a = delta_iso(fx.cache, th);
    Mor b = delta_iso(fx.cache, inverse_map(th));
    CHECK(star(fx.cache, a, b) == delta(fx.cache, v4));
  }

  for (int q : {2, 3, 5}) {
    Group cq = make_group("C" + std::to_string(q));
    CHECK(star(fx.cache, fx.one_cross(cq, cq), fx.cross_one(cq, cq)) ==
          fx.trivial(cq, cq));
  }
}

TEST_CASE("star is associative over {C2, C3}") {
  Fixture fx;
  std::vector<Group> ks = {make_group("C2"), make_group("C3")};
  for (const auto& f : ks)
    for (const auto& g : ks)
      for (const auto& h : ks)
        for (const auto& i : ks)
          for (const auto& u : fx.morphisms(f, g))
            for (const auto& v : fx.morphisms(g, h))
              for (const auto& w : fx.morphisms(h, i))
                REQUIRE(star(fx.cache, star(fx.cache, u, v), w) ==
                        star(fx.cache, u, star(fx.cache, v, w)));
}

TEST_CASE("opposite is an involutive antihomomorphism") {
  Fixture fx;
  Group g = make_group("S3");
  CHECK(opposite(fx.cache, delta(fx.cache, g)) == delta(fx.cache, g));
  CHECK(opposite(fx.cache, fx.one_cross(g, g)) == fx.cross_one(g, g));

  Group c4 = make_group("C4");
  auto mors = fx.morphisms(c4, c4);
  for (const auto& u : mors) {
    CHECK(opposite(fx.cache, opposite(fx.cache, u)) == u);
    for (const auto& v : mors)
      REQUIRE(opposite(fx.cache, star(fx.cache, u, v)) ==
              star(fx.cache, opposite(fx.cache, v), opposite(fx.cache, u)));
  }
}

TEST_CASE("thorax classes and factorization") {
  Fixture fx;
  Group g = make_group("S3");
  CHECK(is_isomorphic(thorax_quotient(delta(fx.cache, g)).group, g).has_value());
  CHECK(thorax_quotient(fx.one_cross(g, g)).group.order() == 1);

  // every morphism factors through its thorax
  std::vector<Group> corpus = {make_group("C4"), make_group("S3")};
  for (const auto& f : corpus)
    for (const auto& h : corpus)
      for (const auto& u : fx.morphisms(f, h)) {
        auto [x, y] = fx.factor_through_thorax(u);
        REQUIRE(star(fx.cache, x, y) == u);
        // and the two thorax sections of the composite agree in class
        Group tu = thorax_quotient(u).group;
        REQUIRE(is_isomorphic(thorax_quotient(x).group, tu).has_value());
        REQUIRE(is_isomorphic(quotient(y.p2_top(), y.p2_bot()).group, tu).has_value());
      }

  // thorax order never grows under composition
  Group c4 = make_group("C4");
  for (const auto& u : fx.morphisms(c4, c4))
    for (const auto& v : fx.morphisms(c4, c4)) {
      Group tw = thorax_quotient(star(fx.cache, u, v)).group;
      REQUIRE(fx.catalog.factor_leq(tw, thorax_quotient(u).group));
      REQUIRE(fx.catalog.factor_leq(tw, thorax_quotient(v).group));
    }
}

TEST_CASE("cocycle values and the cocycle law") {
  Fixture fx;
  EllSpec gen = EllSpec::generic();

  Group g = make_group("S3");
  for (const auto& v : fx.morphisms(g, g))
    CHECK(cocycle_sigma(gen, delta(fx.cache, g), v) == Scalar(1));

  for (int q : {2, 3, 5}) {
    Group cq = make_group("C" + std::to_string(q));
    CHECK(cocycle_sigma(gen, fx.one_cross(cq, cq), fx.cross_one(cq, cq)) ==
          Scalar::variable((unsigned)q));
  }

  // exhaustive cocycle law over {C2, C4}
  std::vector<Group> ks = {make_group("C2"), make_group("C4")};
  long checked = 0;
  for (const auto& f : ks)
    for (const auto& g2 : ks)
      for (const auto& h : ks)
        for (const auto& i : ks)
          for (const auto& u : fx.morphisms(f, g2))
            for (const auto& v : fx.morphisms(g2, h))
              for (const auto& w : fx.morphisms(h, i)) {
                Scalar lhs = cocycle_sigma(gen, u, star(fx.cache, v, w)) *
                             cocycle_sigma(gen, v, w);
                Scalar rhs = cocycle_sigma(gen, u, v) *
                             cocycle_sigma(gen, star(fx.cache, u, v), w);
                REQUIRE(lhs == rhs);
                ++checked;
              }
  CHECK(checked > 1000);
}

TEST_CASE("strong compatibility and adequate subgroups") {
  Fixture fx;
  Group g = make_group("S3");
  CHECK(strongly_compatible(delta(fx.cache, g), delta(fx.cache, g)));

  Group c3 = make_group("C3");
  CHECK(strongly_compatible(fx.one_cross(c3, c3), fx.cross_one(c3, c3)));

  for (int q : {2, 3}) {
    Group cq = make_group("C" + std::to_string(q));
    Mor d = delta(fx.cache, cq);
    auto ad = adequate_subgroups(fx.lattices.get(d.pg->group()), d);
    REQUIRE(ad.size() == 1);
    CHECK(ad[0] == d);
  }
}

TEST_CASE("order identity over all composable pairs in S(C4, C4)") {
  Fixture fx;
  Group c4 = make_group("C4"), g2 = make_group("C2");
  auto mors = fx.morphisms(c4, c4);
  for (const auto& u : mors)
    for (const auto& v : mors) REQUIRE(order_identity_check(fx.cache, u, v));

  CHECK(order_identity_check(fx.cache, delta(fx.cache, g2), delta(fx.cache, g2)));
  for (int q : {2, 5}) {
    Group cq = make_group("C" + std::to_string(q));
    CHECK(order_identity_check(fx.cache, fx.one_cross(cq, cq), fx.cross_one(cq, cq)));
  }
}

TEST_CASE("triangle constructors") {
  Fixture fx;
  Group e = make_group("C2"), l = make_group("C4");

  // identity epimorphism gives the diagonal
  CHECK(triangle_left(fx.cache, identity_map(e)) == delta(fx.cache, e));

  auto epis = epimorphisms(e, l);
  REQUIRE(epis.size() == 1);
  Mor tl = triangle_left(fx.cache, epis[0]);
  CHECK(tl.size() == 4);  // |E| * |ker|
  CHECK(opposite(fx.cache, tl) == triangle_right(fx.cache, epis[0]));

  for (const auto& phi : epimorphisms(e, make_group("C2xC2")))
    CHECK(opposite(fx.cache, triangle_left(fx.cache, phi)) ==
          triangle_right(fx.cache, phi));

  GroupMap not_epi{l, e, {0, 2}};  // C2 into C4
  CHECK_THROWS_AS(triangle_left(fx.cache, not_epi), error);
}
