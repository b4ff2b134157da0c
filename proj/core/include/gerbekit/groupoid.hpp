#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gerbekit/group.hpp"

namespace gerbekit {

using Obj = std::uint32_t;
using Arr = std::uint32_t;

/// A finite groupoid. Composition is written right-to-left: a·b is defined iff
/// src(a) == tgt(b), and then src(a·b) = src(b), tgt(a·b) = tgt(a).
class FiniteGroupoid {
 public:
  /// Full runs the associativity scan over all composable triples; Structure
  /// only checks closure, units and inverses (for constructions whose
  /// associativity is inherited from validated inputs).
  enum class Check { Full, Structure };
  using ComposeFn = std::function<Arr(Arr, Arr)>;

  FiniteGroupoid() = default;

  /// Fills the composition table by calling compose(a, b) for every pair with
  /// src(a) == tgt(b), then locates units and inverses and validates.
  static FiniteGroupoid build(std::size_t num_objects, std::vector<Obj> src, std::vector<Obj> tgt,
                              const ComposeFn& compose, Check check = Check::Full);

  std::size_t num_objects() const noexcept { return num_objects_; }
  std::size_t num_arrows() const noexcept { return src_.size(); }
  Obj src(Arr a) const noexcept { return src_[a]; }
  Obj tgt(Arr a) const noexcept { return tgt_[a]; }
  bool is_loop(Arr a) const noexcept { return src_[a] == tgt_[a]; }
  Arr idn(Obj o) const noexcept { return idn_[o]; }
  Arr inv(Arr a) const noexcept { return inv_[a]; }
  bool is_identity(Arr a) const noexcept { return idn_[src_[a]] == a; }

  /// a·b, or kNone when src(a) != tgt(b).
  Arr comp(Arr a, Arr b) const noexcept {
    if (src_[a] != tgt_[b]) return kNone;
    return table_[row_[a] + tpos_[b]];
  }

  /// Arrows with the given source and target, in increasing id order.
  std::span<const Arr> hom(Obj s, Obj t) const;
  std::span<const Arr> arrows_into(Obj t) const;
  std::span<const Arr> arrows_from(Obj s) const;

  /// Full axiom scan; throws Error naming the failing axiom and witness.
  void check_axioms() const;

  /// Structural equality; names are ignored.
  bool operator==(const FiniteGroupoid& other) const {
    return num_objects_ == other.num_objects_ && src_ == other.src_ && tgt_ == other.tgt_ && table_ == other.table_;
  }

  std::vector<std::string> object_names;
  std::vector<std::string> arrow_names;

 private:
  void index();
  void locate_units_and_inverses();

  std::size_t num_objects_ = 0;
  std::vector<Obj> src_, tgt_;
  std::vector<Arr> idn_, inv_;
  std::vector<std::size_t> row_;    // offset of arrow a's row in table_
  std::vector<std::uint32_t> tpos_; // position of b among arrows into tgt(b)
  std::vector<Arr> table_;
  std::vector<Arr> by_tgt_, by_src_, by_src_tgt_;
  std::vector<std::size_t> tgt_offset_, src_offset_;
};

struct GroupoidMorphism {
  std::vector<Obj> f0;
  std::vector<Arr> f1;
  bool operator==(const GroupoidMorphism&) const = default;
};

/// Throws NotAMorphism unless f commutes with src, tgt, identities, inverses
/// and every defined composite.
void validate_morphism(const FiniteGroupoid& dom, const FiniteGroupoid& cod, const GroupoidMorphism& f);
bool is_morphism(const FiniteGroupoid& dom, const FiniteGroupoid& cod, const GroupoidMorphism& f);
GroupoidMorphism identity_morphism(const FiniteGroupoid& g);
/// outer ∘ inner.
GroupoidMorphism compose(const GroupoidMorphism& outer, const GroupoidMorphism& inner);

/// Bool with a human-readable witness on failure.
struct Verdict {
  bool ok = true;
  std::string witness;
  explicit operator bool() const noexcept { return ok; }
  static Verdict pass() { return {}; }
  static Verdict failure(std::string why) { return {false, std::move(why)}; }
};

FiniteGroupoid group_as_groupoid(const FiniteGroup& g);
FiniteGroupoid point_groupoid();
/// M ⇉ M with only identities.
FiniteGroupoid discrete_groupoid(std::size_t n);
/// Exactly one arrow between any two objects; arrow s→t has id s * n + t.
FiniteGroupoid pair_groupoid(std::size_t n);
/// M×G as a bundle of groups; arrow g_m has id m * |G| + g.
FiniteGroupoid trivial_bundle(std::size_t num_objects, const FiniteGroup& g);
/// Componentwise product; pair (a, b) has id a * |B| + b at both levels.
FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);

struct CechGroupoid {
  FiniteGroupoid groupoid;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> objects;        // (x, i)
  std::vector<std::array<std::uint32_t, 3>> arrows;                     // (x, i, j): (x,j) → (x,i)
  GroupoidMorphism to_space;                                            // onto discrete X
  Arr arrow(std::uint32_t x, std::uint32_t i, std::uint32_t j) const;
  Obj object(std::uint32_t x, std::uint32_t i) const;
};

/// Objects (x, i) with x ∈ U_i, one arrow (x,j) → (x,i) per x ∈ U_i ∩ U_j.
CechGroupoid cech_groupoid(std::size_t space_size, const std::vector<std::vector<std::uint32_t>>& cover);

struct PulledBackGroupoid {
  FiniteGroupoid groupoid;
  GroupoidMorphism projection;
  std::vector<std::array<std::uint32_t, 3>> triples;  // (m, γ, n) with s(γ)=f(m), t(γ)=f(n)
};

PulledBackGroupoid pullback_groupoid(const FiniteGroupoid& delta, std::span<const Obj> f);

/// Surjective on objects and bijective on every hom-set onto Δ[dom.objs].
Verdict is_morita_1(const FiniteGroupoid& dom, const FiniteGroupoid& cod, const GroupoidMorphism& f);

struct QuotientGroupoid {
  FiniteGroupoid groupoid;
  GroupoidMorphism projection;
  std::vector<Arr> representatives;  // smallest arrow of each class
};

/// Γ̃ / j(K) for a bundle of groups K embedded by j (identity on objects).
/// Arrows are the classes a ~ a·j(k).
QuotientGroupoid quotient_by_bundle(const FiniteGroupoid& g, const FiniteGroupoid& bundle,
                                    const GroupoidMorphism& j);

struct Subgroupoid {
  FiniteGroupoid groupoid;
  GroupoidMorphism inclusion;
};

/// Subgroupoid on the given arrows (all objects kept); throws NotClosed.
Subgroupoid subgroupoid(const FiniteGroupoid& g, std::vector<Arr> arrows);

inline constexpr std::size_t kDefaultIsoCap = 64;

struct IsoSearchOptions {
  std::size_t cap = cap_from_env(kDefaultIsoCap);
  /// Fixes the object map instead of searching for one.
  std::optional<std::vector<Obj>> object_map;
  /// Arrow images forced before the search starts.
  std::vector<std::pair<Arr, Arr>> seeds;
  /// Extra acceptance test run on each complete isomorphism.
  std::function<bool(const GroupoidMorphism&)> accept;
};

/// Backtracking isomorphism search with degree-profile pruning; arrow images
/// propagate through composition so only generators are branched on.
std::optional<GroupoidMorphism> groupoid_iso_search(const FiniteGroupoid& a, const FiniteGroupoid& b,
                                                    const IsoSearchOptions& options = {});

}  // namespace gerbekit
