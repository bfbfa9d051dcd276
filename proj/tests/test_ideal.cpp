#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "pretor/category.hpp"
#include "pretor/gallery.hpp"
#include "pretor/ideal.hpp"

using namespace pretor;

namespace {

FinCategory two() {
  return poset_category({"0", "1"}, {{"0", "1"}});
}

}  // namespace

TEST_CASE("full subcategories sort, dedup and resolve names") {
  FinCategory c = n5();
  ObjId z = *c.object_by_name("Z");
  ObjId t = *c.object_by_name("T");
  FullSub s = FullSub::of(c, {z, t, z});
  CHECK(s.size() == 2);
  CHECK(s.objects == std::vector<ObjId>{t, z});
  CHECK(s.contains(z));
  CHECK_FALSE(s.contains(*c.object_by_name("F")));
  CHECK(s.names() == std::vector<std::string>{"T", "Z"});

  CHECK_THROWS_AS((void)FullSub::of_names(c, {"T", "missing"}), Error);
  CHECK(s.replete());
  CHECK(s.iso_closure() == s);

  FullSub inter = s.intersect(FullSub::of(c, {z}));
  CHECK(inter.objects == std::vector<ObjId>{z});
}

TEST_CASE("iso closure adds the isomorphic partners") {
  GalleryResult g = endomap_category(2);
  const FinCategory& c = g.category;
  ObjId c1 = *c.object_by_name("e2_11");
  ObjId c2 = *c.object_by_name("e2_22");
  FullSub s = FullSub::of(c, {c1});
  CHECK_FALSE(s.replete());
  FullSub closed = s.iso_closure();
  CHECK(closed.replete());
  CHECK(closed.contains(c2));
  CHECK(closed.size() == 2);
}

TEST_CASE("trivial morphisms carry a canonical factorization witness") {
  FinCategory c = n5();
  FullSub zee = FullSub::of_names(c, {"Z", "Z'"});
  TrivialIdeal ideal(c, zee);

  MorId tf = *c.morphism_by_name("T<=F");
  REQUIRE(ideal.trivial(tf));
  auto w = ideal.witness(tf);
  REQUIRE(w.has_value());
  CHECK(w->through == *c.object_by_name("Z"));
  CHECK(c.compose(w->right, w->left) == tf);
  CHECK(c.dom(w->left) == c.dom(tf));
  CHECK(c.cod(w->right) == c.cod(tf));

  MorId tc = *c.morphism_by_name("T<=C");
  CHECK_FALSE(ideal.trivial(tc));
  CHECK_FALSE(ideal.witness(tc).has_value());

  // The ideal is two sided: anything composed around a trivial morphism
  // stays trivial.
  for (std::int32_t m = 0; m < c.morphism_count(); ++m) {
    if (!ideal.trivial(MorId{m})) continue;
    for (MorId g : c.from(c.cod(MorId{m})))
      CHECK(ideal.trivial(c.compose(g, MorId{m})));
  }
}

TEST_CASE("trivial hom enumerates witnesses and rejects an empty class") {
  FinCategory c = n5();
  FullSub zee = FullSub::of_names(c, {"Z", "Z'"});
  ObjId t = *c.object_by_name("T");
  ObjId f = *c.object_by_name("F");
  auto ws = trivial_hom(zee, t, f);
  REQUIRE(ws.size() == 1);
  CHECK(ws[0].morphism == *c.morphism_by_name("T<=F"));

  FullSub none = FullSub::of(c, {});
  CHECK_THROWS_AS((void)trivial_hom(none, t, f), Error);
  try {
    (void)trivial_hom(none, t, f);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_trivial_class);
  }
}

TEST_CASE("identities of objects outside the trivial class have no prekernel") {
  FinCategory c = two();
  FullSub zee = FullSub::of_names(c, {"1"});
  ObjId zero = *c.object_by_name("0");
  CHECK(c.hom_size(*c.object_by_name("1"), zero) == 0);
  CHECK(prekernels(zee, c.identity(zero)).empty());
}

TEST_CASE("the two chain has the expected prekernels and precokernels") {
  FinCategory c = two();
  FullSub zee = FullSub::of_names(c, {"1"});
  MorId step = *c.morphism_by_name("0<=1");
  ObjId zero = *c.object_by_name("0");
  ObjId one = *c.object_by_name("1");

  auto pks = prekernels(zee, step);
  REQUIRE(pks.size() == 1);
  CHECK(pks[0].arrow == c.identity(zero));
  CHECK(pks[0].of == step);
  CHECK_FALSE(pks[0].mediators.empty());

  auto cks = precokernels(zee, step);
  REQUIRE(cks.size() == 1);
  CHECK(cks[0].arrow == c.identity(one));

  auto w = is_preexact(zee, c.identity(zero), step);
  REQUIRE(w.has_value());
  CHECK(w->f == c.identity(zero));
  CHECK(w->g == step);
}

TEST_CASE("preexactness requires a composable pair") {
  FinCategory c = chain(3);
  FullSub zee = FullSub::of_names(c, {"2"});
  MorId a = *c.morphism_by_name("1<=2");
  CHECK_THROWS_AS((void)is_preexact(zee, a, a), Error);
}

TEST_CASE("universal property failures name the offending test morphism") {
  FinCategory c = chain(3);
  FullSub zee = FullSub::of_names(c, {"2"});
  TrivialIdeal ideal(c, zee);
  // 2<=3 kills id_2 but the mediator for id_2 would need an arrow 3 -> 2.
  MorId up = *c.morphism_by_name("2<=3");
  auto fail = precokernel_failure(ideal, up, c.identity(*c.object_by_name("2")));
  REQUIRE(fail.has_value());
  CHECK(fail->mediator_count == 0);
}

TEST_CASE("transport along isomorphisms preserves preexactness") {
  GalleryResult g = endomap_category(2);
  const FinCategory& c = g.category;
  FullSub zee = FullSub::of_names(c, {"e0", "e1_1", "e2_12"});

  MorId counit = c.identity(*c.object_by_name("e2_21"));
  MorId unit = *c.morphism_by_name("e2_21>e1_1:11");
  auto w = is_preexact(zee, counit, unit);
  REQUIRE(w.has_value());

  // Precompose the first leg with the swap automorphism.
  MorId swap = *c.morphism_by_name("e2_21>e2_21:21");
  REQUIRE(c.iso(swap));
  PreexactWitness moved = transport_preexact(zee, *w, swap, c.identity(c.cod(unit)));
  CHECK(moved.f == swap);
  CHECK(moved.g == unit);

  MorId collapse = *c.morphism_by_name("e2_21>e1_1:11");
  CHECK_THROWS_AS((void)transport_preexact(zee, *w, collapse, c.identity(c.cod(unit))), Error);
}

TEST_CASE("one leg trivial matches the other leg invertible") {
  FinCategory c = n5();
  FullSub zee = FullSub::of_names(c, {"Z", "Z'"});

  TrivialIffIso a = trivial_iff_iso(zee, *c.morphism_by_name("T<=C"),
                                    *c.morphism_by_name("C<=F"));
  CHECK(a.prekernel_case);
  CHECK(a.precokernel_case);
  CHECK(a.consistent);
  CHECK_FALSE(a.f_trivial);
  CHECK_FALSE(a.g_iso);

  ObjId z = *c.object_by_name("Z");
  TrivialIffIso b = trivial_iff_iso(zee, c.identity(z), c.identity(z));
  CHECK(b.consistent);
  CHECK(b.f_trivial);
  CHECK(b.g_iso);

  CHECK_THROWS_AS((void)trivial_iff_iso(zee, *c.morphism_by_name("T<=Z"),
                                        *c.morphism_by_name("Z<=Z'")),
                  Error);
}

TEST_CASE("a precokernel pairs with any prekernel it has") {
  FinCategory c = two();
  FullSub zee = FullSub::of_names(c, {"1"});
  MorId step = *c.morphism_by_name("0<=1");

  auto w = cokernel_of_its_kernel(zee, step);
  REQUIRE(w.has_value());
  CHECK(w->g == step);
  CHECK(w->f == c.identity(*c.object_by_name("0")));

  CHECK_THROWS_AS(
      (void)cokernel_of_its_kernel(zee, c.identity(*c.object_by_name("0"))),
      Error);
}

TEST_CASE("prekernels in a category are precokernels in its opposite") {
  FinCategory c = n5();
  OppositeCategory op = opposite(c);
  FullSub zee = FullSub::of_names(c, {"Z", "Z'"});
  FullSub zee_op = FullSub::of(op.category, zee.objects);

  for (std::int32_t m = 0; m < c.morphism_count(); ++m) {
    auto direct = prekernels(zee, MorId{m});
    auto dual = precokernels(zee_op, op.to_op[m]);
    REQUIRE(direct.size() == dual.size());
    std::vector<MorId> direct_arrows, dual_arrows;
    for (const auto& cert : direct) direct_arrows.push_back(op.to_op[cert.arrow.v]);
    for (const auto& cert : dual) dual_arrows.push_back(cert.arrow);
    std::sort(direct_arrows.begin(), direct_arrows.end());
    std::sort(dual_arrows.begin(), dual_arrows.end());
    CHECK(direct_arrows == dual_arrows);
  }
}
