#include "doctest.h"
#include "gerbekit/corpus.hpp"
#include "gerbekit/error.hpp"
#include "gerbekit/span.hpp"

using namespace gerbekit;

namespace {

TwoGroupoidPtr share(TwoGroupoid t) { return std::make_shared<const TwoGroupoid>(std::move(t)); }

bool levelwise_isomorphic(const TwoGroupoid& a, const TwoGroupoid& b) {
  return groupoid_iso_search(a.one(), b.one()).has_value() && groupoid_iso_search(a.vert(), b.vert()).has_value() &&
         groupoid_iso_search(a.horiz(), b.horiz()).has_value();
}

}  // namespace

TEST_CASE("identity spans are units for composition") {
  auto e = corpus::z4_over_z2();
  auto b = extension_to_bundle(e);
  auto id_base = identity_span(b.span.base);
  auto id_target = identity_span(b.span.target);

  auto twice = compose_spans(id_base, id_base);
  CHECK(twice.apex->num_cells() == b.span.base->num_cells());
  CHECK(*twice.apex == *b.span.base);

  auto left = compose_spans(id_base, b.span);
  auto right = compose_spans(b.span, id_target);
  CHECK(left.apex->num_cells() == b.span.apex->num_cells());
  CHECK(right.apex->num_cells() == b.span.apex->num_cells());
  CHECK(levelwise_isomorphic(*left.apex, *b.span.apex));
  CHECK(compare_spans(left, b.span).result == Equivalence::Equivalent);
}

TEST_CASE("incompatible spans are rejected") {
  auto z4 = extension_to_bundle(corpus::z4_over_z2());
  auto s3 = extension_to_bundle(corpus::s3_over_z2());
  try {
    compose_spans(z4.span, s3.span);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompatibleSpans);
  }
  // The AD-side leg is not Morita, so it cannot be a left leg.
  CHECK_THROWS_AS(make_span(z4.span.base, z4.span.apex, z4.span.target, z4.span.right, z4.span.right), Error);
}

TEST_CASE("reduced Z/4 span composed with the band inclusion") {
  auto e = corpus::z4_over_z2();
  auto red = central_reduction(e, *is_central(e));
  auto incl = span_of_morphism(red.span.target, red.target->two, red.inclusion);
  auto composite = compose_spans(red.span, incl);
  // Each apex cell pairs with the unique cell of [Z/2→1] it maps to.
  CHECK(composite.apex->num_cells() == 8);
  CHECK(is_morita_2(*composite.apex, *composite.base, composite.left));

  auto b = extension_to_bundle(e, red.target);
  auto cmp = compare_spans(composite, b.span);
  CHECK(cmp.result == Equivalence::Equivalent);
  REQUIRE(cmp.witness.has_value());
  auto a = compose(composite.right, cmp.refinement.first);
  auto c = compose(b.span.right, cmp.refinement.second);
  CHECK(check_nat2(cmp.refinement.two, *b.span.target, a, c, *cmp.witness));
}

TEST_CASE("span comparison outcomes") {
  auto z2 = share(as_two_groupoid(group_as_groupoid(cyclic_group(2))));
  auto identity = span_of_morphism(z2, z2, identity_two_morphism(*z2));
  auto trivial = span_of_morphism(z2, z2, TwoMorphism{{0}, {0, 0}, {0, 0}});
  CHECK(compare_spans(identity, identity).result == Equivalence::Equivalent);
  CHECK(compare_spans(identity, trivial).result == Equivalence::Unknown);
  auto yes = [](const Span&, const Span&) { return true; };
  CHECK(compare_spans(identity, trivial, kDefaultNat2Budget, yes).result == Equivalence::NotEquivalentByCohomology);
  // Even equal spans are Unknown once the budget is gone.
  CHECK(compare_spans(identity, identity, 0).result == Equivalence::Unknown);
  CHECK(std::string(to_string(Equivalence::Unknown)) == "Unknown");
}

TEST_CASE("whitney sums") {
  auto e = corpus::z4_over_z2();
  auto red = central_reduction(e, *is_central(e));
  auto sum = whitney_sum(red.span, red.span);
  CHECK(sum.target->num_objects() == 1);
  CHECK(sum.target->num_arrows() == 1);
  CHECK(sum.target->num_cells() == 4);
  CHECK_NOTHROW(sum.target->check_axioms());
  CHECK(is_morita_2(*sum.apex, *sum.base, sum.left));
  // Cells of the sum are pairs of apex cells over the same base cell.
  std::size_t cells = 0;
  const auto& apex = *red.span.apex;
  for (Cell x = 0; x < apex.num_cells(); ++x)
    for (Cell y = 0; y < apex.num_cells(); ++y) cells += red.span.left.f2[x] == red.span.left.f2[y];
  CHECK(sum.apex->num_cells() == cells);

  auto point = share(point_two_groupoid());
  TwoMorphism to_point{{0}, std::vector<Arr>(red.span.base->num_arrows(), 0),
                       std::vector<Cell>(red.span.base->num_cells(), 0)};
  auto unit = span_of_morphism(red.span.base, point, to_point);
  auto padded = whitney_sum(red.span, unit);
  CHECK(padded.apex->num_cells() == red.span.apex->num_cells());
  CHECK(levelwise_isomorphic(*padded.apex, *red.span.apex));
  CHECK(padded.target->num_cells() == red.span.target->num_cells());
  for (auto s : corpus::extensions()) {
    CAPTURE(s.name);
    auto b = extension_to_bundle(s.extension);
    if (b.span.apex->num_cells() > 64) continue;
    auto w = whitney_sum(b.span, b.span);
    CHECK(is_morita_2(*w.apex, *w.base, w.left));
  }
}

TEST_CASE("pulling a bundle back to a Čech cover") {
  auto cech = corpus::e5();
  auto space = share(as_two_groupoid(discrete_groupoid(3)));
  auto cover = share(as_two_groupoid(cech.groupoid));
  TwoMorphism proj{cech.to_space.f0, cech.to_space.f1, cech.to_space.f1};
  auto refinement = make_span(cover, cover, space, identity_two_morphism(*cover), proj);

  auto e = trivial_extension(discrete_groupoid(3), cyclic_group(2));
  auto red = central_reduction(e, *is_central(e));
  auto pulled = pullback_bundle(refinement, red.span);
  CHECK(pulled.apex->num_objects() == 4);
  CHECK(is_morita_2(*pulled.apex, *pulled.base, pulled.left));
  CHECK(*pulled.target == *red.span.target);
  // Identity refinement leaves the bundle alone.
  auto same = pullback_bundle(identity_span(red.span.base), red.span);
  CHECK(levelwise_isomorphic(*same.apex, *red.span.apex));
}

TEST_CASE("composition is associative up to the canonical iso of iterated fiber products") {
  auto e = corpus::z4_over_z2();
  auto red = central_reduction(e, *is_central(e));
  auto incl = span_of_morphism(red.span.target, red.target->two, red.inclusion);
  std::vector<Obj> two_points{0, 0};
  auto pb = pullback_two_groupoid(*red.span.base, two_points);
  auto f = span_of_morphism(share(std::move(pb.two)), red.span.base, pb.projection);

  auto ab_c = compose_spans(compose_spans(f, red.span), incl);
  auto a_bc = compose_spans(f, compose_spans(red.span, incl));
  CHECK(ab_c.apex->num_cells() == a_bc.apex->num_cells());
  CHECK(levelwise_isomorphic(*ab_c.apex, *a_bc.apex));
  CHECK(compare_spans(ab_c, a_bc).result == Equivalence::Equivalent);
}
