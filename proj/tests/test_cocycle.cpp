#include <random>

#include "doctest.h"
#include "gerbekit/cocycle.hpp"
#include "gerbekit/cohomology.hpp"
#include "gerbekit/error.hpp"
#include "cocycle_fixtures.hpp"

using namespace gerbekit;
using namespace gerbekit::fixtures;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ParseError;
}

std::size_t disjoint_pairs(const Cover& cover) {
  std::size_t total = 0;
  for (std::uint32_t i = 0; i < cover.size(); ++i)
    for (std::uint32_t j = 0; j < cover.size(); ++j) total += cover.common({i, j}).size();
  return total;
}

bool apex_builds(const NonAbCocycle& c, const Cover& cover) {
  try {
    auto t = cocycle_apex(c, cech_groupoid(cover.space_size, cover.opens));
    t.check_axioms();
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

TEST_CASE("covers") {
  auto cover = make_cover(3, {{1, 0, 1}, {2, 1}});
  CHECK(cover.opens[0] == std::vector<std::uint32_t>{0, 1});
  CHECK(cover.common({0, 1}) == std::vector<std::uint32_t>{1});
  CHECK(kind_of([] { make_cover(3, {{0, 1}}); }) == ErrorKind::NotACover);
  CHECK(kind_of([] { make_cover(2, {{0, 1, 2}}); }) == ErrorKind::NotACover);
}

TEST_CASE("trivial cocycle gives the constant bundle") {
  const auto G = symmetric_group(3);
  auto cover = make_cover(2, {{0, 1}});
  auto c = constant_cocycle(G, cover);
  auto report = validate_nonab(c, cover);
  CHECK(report.ok());
  auto b = cocycle_to_bundle(c, cover);
  CHECK(b.span.apex->num_cells() == 2 * 36);
  CHECK(is_morita_2(*b.span.apex, *b.span.base, b.span.left));
  auto ad = inner_hom(G, b.target->aut);
  for (Arr p = 0; p < b.span.apex->num_arrows(); ++p) CHECK(b.span.right.f1[p] == ad(p % G.order()));
}

TEST_CASE("missing entries are reported") {
  const auto G = cyclic_group(3);
  auto cover = make_cover(1, {{0}, {0}});
  auto c = constant_cocycle(G, cover);
  c.g.erase({0, 1, 0, 0});
  auto report = validate_nonab(c, cover);
  CHECK_FALSE(report.tables.ok);
  CHECK(report.tables.witness.find("i=0,j=1,k=0,x=0") != std::string::npos);
  c = constant_cocycle(G, cover);
  c.lambda[{1, 0, 0}] = {0, 0, 0};
  CHECK(validate_nonab(c, cover).tables.witness.find("not an automorphism") != std::string::npos);
  CHECK(kind_of([&] { cocycle_to_bundle(c, cover); }) == ErrorKind::InvalidCocycle);
}

TEST_CASE("S3 cocycle on a point with two opens") {
  auto cover = make_cover(1, {{0}, {0}});
  auto c = s3_point_cocycle(cover);
  auto report = validate_nonab(c, cover);
  INFO(report.summary());
  REQUIRE(report.ok());
  // The center of S3 is trivial, so identity 1 pins g down: g010 = t·t' ≠ 1.
  CHECK(c.g.at({0, 0, 0, 0}) == 0);
  CHECK(c.g.at({0, 1, 0, 0}) != 0);
  CHECK(c.G.elem_order(c.g.at({0, 1, 0, 0})) == 3);

  auto b = cocycle_to_bundle(c, cover);
  const auto& apex = *b.span.apex;
  CHECK(apex.num_cells() == disjoint_pairs(cover) * 36);
  CHECK(disjoint_pairs(cover) == 4);
  CHECK_NOTHROW(apex.check_axioms());
  CHECK(is_morita_2(apex, *b.span.base, b.span.left));
  CHECK(is_two_morphism(apex, *b.target->two, b.span.right));

  SUBCASE("bundle_to_extension is an extension of the Čech groupoid") {
    auto back = bundle_to_extension(b.span, *b.target);
    const auto& e = back.extension;
    CHECK(e.G == symmetric_group(3));
    CHECK(e.num_objects() == b.cech.objects.size());
    IsoSearchOptions opt;
    opt.object_map = std::vector<Obj>{0, 1};
    CHECK(groupoid_iso_search(e.base, b.cech.groupoid, opt).has_value());
    CHECK(e.tilde.num_arrows() == b.cech.groupoid.num_arrows() * 6);
  }
}

TEST_CASE("every single-entry perturbation of g is rejected") {
  auto cover = make_cover(1, {{0}, {0}, {0}});
  const auto c = s3_point_cocycle(cover);
  REQUIRE(validate_nonab(c, cover).ok());
  std::size_t rejected = 0, total = 0;
  for (const auto& [key, value] : c.g)
    for (Elem v = 0; v < c.G.order(); ++v) {
      if (v == value) continue;
      auto bad = c;
      bad.g[key] = v;
      auto report = validate_nonab(bad, cover);
      ++total;
      if (!report.ok() && !(report.identity1.ok && report.identity2.ok)) {
        ++rejected;
        CHECK_FALSE(report.summary().find("x=0") == std::string::npos);
      }
      CHECK_FALSE(apex_builds(bad, cover));
    }
  CHECK(total == 27 * 5);
  CHECK(rejected == total);
}

TEST_CASE("validation agrees with the apex axioms on fuzzed tables") {
  std::mt19937 rng(20240611);
  const std::vector<FiniteGroup> groups{symmetric_group(3), cyclic_group(3)};
  std::vector<Automorphisms> auts;
  for (const auto& G : groups) auts.push_back(automorphism_group(G));
  const std::vector<Cover> covers{make_cover(1, {{0}, {0}}), make_cover(2, {{0, 1}, {1}}),
                                  make_cover(2, {{0}, {0, 1}, {1}})};
  std::size_t valid = 0, invalid = 0;
  for (int trial = 0; trial < 160; ++trial) {
    const auto gi = static_cast<std::size_t>(trial % 2);
    const auto& G = groups[gi];
    const auto& cover = covers[static_cast<std::size_t>(trial / 2) % covers.size()];
    auto c = twisted_cocycle(G, auts[gi], cover, rng);
    switch (trial % 4) {
      case 0:
        break;
      case 1: {  // one g entry
        auto it = std::next(c.g.begin(), static_cast<std::ptrdiff_t>(rng() % c.g.size()));
        it->second = static_cast<Elem>(rng() % G.order());
        break;
      }
      case 2: {  // one λ entry, replaced by a random automorphism
        auto it = std::next(c.lambda.begin(), static_cast<std::ptrdiff_t>(rng() % c.lambda.size()));
        it->second = auts[gi].maps[rng() % auts[gi].maps.size()];
        break;
      }
      default:  // everything random
        for (auto& [k, v] : c.lambda) v = auts[gi].maps[rng() % auts[gi].maps.size()];
        for (auto& [k, v] : c.g) v = static_cast<Elem>(rng() % G.order());
    }
    const bool ok = validate_nonab(c, cover).ok();
    CHECK(ok == apex_builds(c, cover));
    ++(ok ? valid : invalid);
  }
  CHECK(valid >= 40);
  CHECK(invalid >= 40);
}

TEST_CASE("cocycle bundle left legs are Morita in cohomology") {
  for (std::uint32_t p : {2u, 3u}) {
    auto cover = make_cover(1, {{0}});
    auto b = cocycle_to_bundle(s3_point_cocycle(cover), cover);
    for (std::size_t q = 0; q <= 2; ++q)
      CHECK(induced_map(*b.span.apex, *b.span.base, b.span.left, q, p).inverse().has_value());

    auto cover2 = make_cover(3, {{0, 1}, {1, 2}});
    auto b2 = cocycle_to_bundle(constant_cocycle(cyclic_group(3), cover2), cover2);
    for (std::size_t q = 0; q <= 2; ++q)
      CHECK(induced_map(*b2.span.apex, *b2.span.base, b2.span.left, q, p).inverse().has_value());
  }
}

namespace {

AbCocycle random_ab_cocycle(const FiniteGroup& A, const Cover& cover, std::mt19937& rng, std::map<Key3, Elem>* h_out = nullptr) {
  AbCocycle zero{A, {}};
  const auto n = static_cast<std::uint32_t>(cover.size());
  std::map<Key3, Elem> h;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      for (auto x : cover.common({i, j})) h[{i, j, x}] = static_cast<Elem>(rng() % A.order());
      for (std::uint32_t k = 0; k < n; ++k)
        for (auto x : cover.common({i, j, k})) zero.g[{i, j, k, x}] = A.unit();
    }
  if (h_out) *h_out = h;
  return add_coboundary(zero, h);
}

}  // namespace

TEST_CASE("abelian cocycles") {
  const auto A = cyclic_group(2);
  std::mt19937 rng(7);
  const auto cover = make_cover(3, {{0, 1}, {1, 2}});

  SUBCASE("zero cocycle gives the trivial extension") {
    auto zero = random_ab_cocycle(A, cover, rng);
    for (auto& [k, v] : zero.g) v = 0;
    auto ce = ab_cocycle_to_central_extension(zero, cover);
    auto triv = trivial_extension(ce.cech.groupoid, A);
    CHECK(extension_iso_search(ce.extension, triv).has_value());
  }

  SUBCASE("invalid data") {
    auto c = random_ab_cocycle(A, cover, rng);
    c.g.at({0, 1, 0, 1}) ^= 1;
    CHECK_FALSE(validate_ab(c, cover).ok);
    CHECK(kind_of([&] { ab_cocycle_to_central_extension(c, cover); }) == ErrorKind::InvalidCocycle);
    CHECK(kind_of([&] { ab_cocycle_to_central_extension(c, cover, false); }) == ErrorKind::AssociativityFailure);
    AbCocycle s3{symmetric_group(3), {}};
    CHECK(kind_of([&] { ab_cocycle_to_central_extension(s3, cover); }) == ErrorKind::InvalidCocycle);
  }

  SUBCASE("central, and the class is the class of the cochain") {
    for (const auto& group : {cyclic_group(2), cyclic_group(3), cyclic_group(4)}) {
      const auto chars = characters(group, 2).size() > 1 ? characters(group, 2) : characters(group, 3);
      const std::uint32_t p = characters(group, 2).size() > 1 ? 2 : 3;
      const auto& chi = chars[1];
      for (int trial = 0; trial < 5; ++trial) {
        auto c = random_ab_cocycle(group, cover, rng);
        REQUIRE(validate_ab(c, cover).ok);
        auto ce = ab_cocycle_to_central_extension(c, cover);
        CHECK(is_central(ce.extension).has_value());

        auto base = nerve_cohomology(as_two_groupoid(ce.cech.groupoid), 2, p);
        auto cls = extension_class(base, ce.extension, chi);
        auto cochain = ab_cocycle_cochain(base.nerve, ce.cech, c, chi, p);
        REQUIRE(base.complex->is_cocycle(2, cochain));
        CHECK(base[2].coordinates(cochain) == cls.coordinates);

        // The Čech groupoid is Morita equivalent to X, so H² vanishes.
        CHECK(base[2].dimension() == 0);
        auto m = induced_map(as_two_groupoid(ce.cech.groupoid), as_two_groupoid(discrete_groupoid(3)),
                             TwoMorphism{ce.cech.to_space.f0, ce.cech.to_space.f1, ce.cech.to_space.f1}, 2, p);
        CHECK(m.rows == 0);
      }
    }
  }

  SUBCASE("cohomologous cocycles give equal classes") {
    auto c = random_ab_cocycle(A, cover, rng);
    std::map<Key3, Elem> h;
    auto d = add_coboundary(c, [&] {
      random_ab_cocycle(A, cover, rng, &h);
      return h;
    }());
    auto e1 = ab_cocycle_to_central_extension(c, cover).extension;
    auto e2 = ab_cocycle_to_central_extension(d, cover).extension;
    CHECK(extension_class(e1, {0, 1}, 2).coordinates == extension_class(e2, {0, 1}, 2).coordinates);
  }
}
