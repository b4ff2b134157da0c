#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "gerbekit/cocycle.hpp"
#include "gerbekit/cohomology.hpp"
#include "json.hpp"

namespace gerbekit::io {

using json = nlohmann::json;

// Documents carry a "kind" field; older files without one are recognised by
// their keys.
enum class Kind { Group, Groupoid, TwoGroupoid, CrossedModule, Extension, Span, NonAbCocycle, AbCocycle };

const char* to_string(Kind k);
Kind detect_kind(const json& doc);

json to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const json& doc);

/// Arrows and objects are referred to by integer id; names are informational.
json to_json(const FiniteGroupoid& g);
FiniteGroupoid groupoid_from_json(const json& doc);

json to_json(const TwoGroupoid& t);
TwoGroupoid two_groupoid_from_json(const json& doc);

json to_json(const GroupoidMorphism& f);
GroupoidMorphism groupoid_morphism_from_json(const json& doc);
json to_json(const TwoMorphism& f);
TwoMorphism two_morphism_from_json(const json& doc);

json to_json(const CrossedModuleGpd& cm);
CrossedModuleGpd crossed_module_from_json(const json& doc);

/// "i" is indexed like the trivial bundle: arrow g_m at m·|G| + g.
json to_json(const GExtension& e);
GExtension extension_from_json(const json& doc);

struct SpanDoc {
  Span span;
  /// G for bundles into [G → Aut(G)], so the target can be rebuilt.
  std::optional<FiniteGroup> structure_group;
};

json to_json(const Span& s, const FiniteGroup* structure_group = nullptr);
SpanDoc span_from_json(const json& doc);

struct CocycleDoc {
  Cover cover;
  std::vector<std::string> space;
  std::optional<NonAbCocycle> nonab;
  std::optional<AbCocycle> ab;
};

json to_json(const Cover& cover, const NonAbCocycle& c);
json to_json(const Cover& cover, const AbCocycle& c);
CocycleDoc cocycle_from_json(const json& doc);

/// {"degree", "prime", "dimension", "basis"} with cocycles as [simplex, value] pairs.
json to_json(const Cohomology& h);
/// Row-major entries plus the coordinate text form "row col value" per nonzero.
json to_json(const FpMatrix& m);
std::string coordinate_text(const FpMatrix& m);

/// The 2-groupoid a document presents: groups and groupoids are promoted,
/// crossed modules become their 2-groupoid.
TwoGroupoid as_two_groupoid_doc(const json& doc);

/// Sorted keys, no whitespace.
std::string canonical(const json& doc);
/// FNV-1a 64 of the canonical form, as 16 hex digits.
std::string content_hash(const json& doc);

/// Reads a JSON file; throws ParseError on I/O or syntax errors.
json read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const json& doc);

/// Append-only store: objects/<hash>.json plus a log of name → hash bindings.
/// The latest binding of a name wins.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  std::string put(const std::string& name, const json& doc);
  std::optional<json> get(const std::string& name_or_hash) const;
  const std::filesystem::path& root() const noexcept { return root_; }

 private:
  std::filesystem::path root_;
};

}  // namespace gerbekit::io
