#include "gerbekit/corpus.hpp"

#include "gerbekit/error.hpp"

namespace gerbekit::corpus {

namespace {

std::vector<Elem> elements_not_of_order(const FiniteGroup& g, std::size_t order) {
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x)
    if (g.elem_order(x) != order) out.push_back(x);
  return out;
}

}  // namespace

CechGroupoid e5() {
  auto c = cech_groupoid(3, {{0, 1}, {1, 2}});
  const char* names[] = {"a", "b", "c"};
  for (Obj o = 0; o < c.objects.size(); ++o) {
    c.groupoid.object_names[o] = std::string(names[c.objects[o].first]) + "@" + std::to_string(c.objects[o].second);
  }
  for (Arr a = 0; a < c.arrows.size(); ++a) {
    const auto [x, i, j] = c.arrows[a];
    c.groupoid.arrow_names[a] = std::string(names[x]) + "@" + std::to_string(i) + std::to_string(j);
  }
  return c;
}

GExtension z4_over_z2() { return group_extension(cyclic_group(4), {0, 2}); }
GExtension v4_over_z2() { return group_extension(direct_product(cyclic_group(2), cyclic_group(2)), {0, 1}); }
GExtension s3_over_z2() {
  auto s3 = symmetric_group(3);
  return group_extension(s3, elements_not_of_order(s3, 2));
}
GExtension z9_over_z3() { return group_extension(cyclic_group(9), {0, 3, 6}); }
GExtension trivial_z2() { return trivial_extension(point_groupoid(), cyclic_group(2)); }
GExtension trivial_z3_e5() { return trivial_extension(e5().groupoid, cyclic_group(3)); }

GExtension z4_over_z2_two_points() {
  std::vector<Obj> f{0, 0};
  return pullback_extension(z4_over_z2(), f).extension;
}

std::vector<Named> extensions() {
  return {{"z4_over_z2", z4_over_z2()},         {"v4_over_z2", v4_over_z2()},
          {"s3_over_z2", s3_over_z2()},         {"z9_over_z3", z9_over_z3()},
          {"trivial_z2", trivial_z2()},         {"trivial_z3_e5", trivial_z3_e5()},
          {"z4_over_z2_two_points", z4_over_z2_two_points()}};
}

GExtension extension(const std::string& name) {
  for (auto& n : extensions())
    if (n.name == name) return std::move(n.extension);
  fail(ErrorKind::ParseError, "unknown corpus extension '" + name + "'");
}

}  // namespace gerbekit::corpus
