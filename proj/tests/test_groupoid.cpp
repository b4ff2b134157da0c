#include <algorithm>

#include "doctest.h"
#include "gerbekit/error.hpp"
#include "gerbekit/groupoid.hpp"
#include "gerbekit/two_groupoid.hpp"

using namespace gerbekit;

namespace {

// X = {a, b, c} covered by {a, b} and {b, c}.
CechGroupoid two_set_cover() { return cech_groupoid(3, {{0, 1}, {1, 2}}); }

}  // namespace

TEST_CASE("trivial bundles") {
  auto z2 = trivial_bundle(1, cyclic_group(2));
  CHECK(z2.num_objects() == 1);
  CHECK(z2.num_arrows() == 2);
  auto b = trivial_bundle(2, cyclic_group(3));
  CHECK(b.num_arrows() == 6);
  CHECK(b.comp(1, 2) == 0);
  CHECK(b.comp(1, 4) == kNone);
  CHECK(b.hom(0, 1).empty());
}

TEST_CASE("Čech groupoids") {
  auto single = cech_groupoid(1, {{0}});
  CHECK(single.groupoid.num_objects() == 1);
  CHECK(single.groupoid.num_arrows() == 1);

  auto c = two_set_cover();
  CHECK(c.groupoid.num_objects() == 4);
  CHECK(c.groupoid.num_arrows() == 6);
  const Arr bij = c.arrow(1, 0, 1);
  CHECK(c.groupoid.src(bij) == c.object(1, 1));
  CHECK(c.groupoid.tgt(bij) == c.object(1, 0));
  CHECK(c.groupoid.comp(bij, c.arrow(1, 1, 0)) == c.arrow(1, 0, 0));
  CHECK(is_morita_1(c.groupoid, discrete_groupoid(3), c.to_space));

  CHECK_THROWS_AS(cech_groupoid(3, {{0, 1}}), Error);
}

TEST_CASE("pullback groupoids") {
  auto z2 = group_as_groupoid(cyclic_group(2));
  std::vector<Obj> two_points{0, 0};
  auto pb = pullback_groupoid(z2, two_points);
  CHECK(pb.groupoid.num_arrows() == 8);
  CHECK(is_morita_1(pb.groupoid, z2, pb.projection));

  auto pt = pullback_groupoid(point_groupoid(), two_points);
  IsoSearchOptions options;
  CHECK(groupoid_iso_search(pt.groupoid, pair_groupoid(2), options).has_value());

  auto c = two_set_cover();
  std::vector<Obj> id{0, 1, 2, 3};
  auto same = pullback_groupoid(c.groupoid, id);
  CHECK(groupoid_iso_search(same.groupoid, c.groupoid).has_value());

  std::vector<Obj> not_onto{0, 1};
  CHECK_THROWS_AS(pullback_groupoid(c.groupoid, not_onto), Error);
}

TEST_CASE("1-Morita morphisms") {
  auto pair3 = pair_groupoid(3);
  GroupoidMorphism to_point{{0, 0, 0}, std::vector<Arr>(9, 0)};
  CHECK(is_morita_1(pair3, point_groupoid(), to_point));
  CHECK(is_morita_1(pair3, pair3, identity_morphism(pair3)));

  auto z2 = group_as_groupoid(cyclic_group(2));
  auto collapse = is_morita_1(z2, point_groupoid(), {{0}, {0, 0}});
  CHECK_FALSE(collapse);
  CHECK(collapse.witness.find("injective") != std::string::npos);

  // Composition of Morita morphisms stays Morita.
  auto c = two_set_cover();
  auto pb = pullback_groupoid(discrete_groupoid(3), c.to_space.f0);
  CHECK(is_morita_1(pb.groupoid, discrete_groupoid(3), pb.projection));
  GroupoidMorphism collapse_all{{0, 0, 0}, std::vector<Arr>(3, 0)};
  CHECK_FALSE(is_morita_1(discrete_groupoid(3), point_groupoid(), collapse_all));
  CHECK(is_morita_1(pair3, point_groupoid(), compose(to_point, identity_morphism(pair3))));
}

TEST_CASE("quotients by normal bundles") {
  auto z4 = group_as_groupoid(cyclic_group(4));
  auto k = group_as_groupoid(cyclic_group(2));
  auto q = quotient_by_bundle(z4, k, {{0}, {0, 2}});
  CHECK(q.groupoid.num_arrows() == 2);
  CHECK(groupoid_iso_search(q.groupoid, group_as_groupoid(cyclic_group(2))).has_value());
  for (Arr a : std::vector<Arr>{0, 2}) CHECK(q.groupoid.is_identity(q.projection.f1[a]));

  auto triv = quotient_by_bundle(z4, point_groupoid(), {{0}, {0}});
  CHECK(triv.groupoid.num_arrows() == 4);

  auto s3 = symmetric_group(3);
  auto s3g = group_as_groupoid(s3);
  Elem transposition = 0;
  for (Elem g = 0; g < 6; ++g)
    if (s3.elem_order(g) == 2) transposition = g;
  CHECK_THROWS_AS(quotient_by_bundle(s3g, k, {{0}, {s3.unit(), transposition}}), Error);
}

TEST_CASE("isomorphism search") {
  auto z4 = group_as_groupoid(cyclic_group(4));
  auto v4 = group_as_groupoid(direct_product(cyclic_group(2), cyclic_group(2)));
  CHECK_FALSE(groupoid_iso_search(z4, v4).has_value());
  auto self = groupoid_iso_search(z4, z4);
  REQUIRE(self.has_value());
  CHECK(self->f1 == identity_morphism(z4).f1);

  // Pair(2) with arrows listed in a different order.
  auto p = pair_groupoid(2);
  std::vector<Arr> perm{3, 1, 2, 0};
  std::vector<Obj> src, tgt;
  for (Arr a : perm) {
    src.push_back(1 - p.src(a));
    tgt.push_back(1 - p.tgt(a));
  }
  std::vector<Arr> back(4);
  for (Arr i = 0; i < 4; ++i) back[perm[i]] = i;
  auto relabeled = FiniteGroupoid::build(2, src, tgt, [&](Arr a, Arr b) { return back[p.comp(perm[a], perm[b])]; });
  auto iso = groupoid_iso_search(p, relabeled);
  REQUIRE(iso.has_value());
  CHECK(is_morphism(p, relabeled, *iso));

  IsoSearchOptions tight;
  tight.cap = 2;
  CHECK_THROWS_AS(groupoid_iso_search(z4, z4, tight), Error);
}

TEST_CASE("loops crossed module") {
  auto s3 = group_as_groupoid(symmetric_group(3));
  auto cm = loops_crossed_module(s3);
  CHECK(cm.X.num_arrows() == 6);
  auto pair = loops_crossed_module(pair_groupoid(2));
  CHECK(pair.X.num_arrows() == 2);
  auto cech = loops_crossed_module(two_set_cover().groupoid);
  CHECK(cech.X.num_arrows() == 4);
  for (Arr x = 0; x < cech.X.num_arrows(); ++x) CHECK(cech.X.is_identity(x));
}

TEST_CASE("malformed groupoids are rejected") {
  // Two loops on one object composing like a two-element semilattice.
  CHECK_THROWS_AS(FiniteGroupoid::build(1, {0, 0}, {0, 0}, [](Arr a, Arr b) { return std::max(a, b); }), Error);
  CHECK_THROWS_AS(FiniteGroupoid::build(1, {0, 0}, {0, 0}, [](Arr, Arr) { return Arr{5}; }), Error);
}
