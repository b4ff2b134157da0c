#pragma once

#include <string>
#include <vector>

#include "gerbekit/extension.hpp"

namespace gerbekit::corpus {

/// X = {a,b,c} covered by {a,b} and {b,c}.
CechGroupoid e5();

GExtension z4_over_z2();      // kernel {0,2}
GExtension v4_over_z2();      // Z/2×Z/2 → Z/2, kernel 0×Z/2
GExtension s3_over_z2();      // kernel A3
GExtension z9_over_z3();      // kernel {0,3,6}
GExtension trivial_z2();      // Z/2 over a point
GExtension trivial_z3_e5();   // Z/3 over the Čech groupoid of e5()
/// Z/4 → Z/2 pulled back along {1,2} → {*}.
GExtension z4_over_z2_two_points();

struct Named {
  std::string name;
  GExtension extension;
};

/// All of the above, in a fixed order.
std::vector<Named> extensions();
/// Looks up one of extensions() by name; throws ParseError.
GExtension extension(const std::string& name);

}  // namespace gerbekit::corpus
