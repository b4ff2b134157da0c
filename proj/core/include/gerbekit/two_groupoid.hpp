#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gerbekit/groupoid.hpp"

namespace gerbekit {

using Cell = std::uint32_t;

/// A strict finite 2-groupoid Γ₂ ⇉ Γ₁ ⇉ Γ₀, stored as three groupoids:
///   one   : Γ₁ ⇉ Γ₀
///   vert  : Γ₂ ⇉ Γ₁ with src = l, tgt = u and composition ∘ᵥ
///   horiz : Γ₂ ⇉ Γ₀ with src = s∘l, tgt = t∘l and composition ∘ₕ
/// b ∘ᵥ a is defined iff l(b) = u(a); a ∘ₕ b iff s(a) = t(b).
class TwoGroupoid {
 public:
  using Check = FiniteGroupoid::Check;

  TwoGroupoid() = default;

  /// Structure checks boundaries, units and the compatibility of l, u with ∘ₕ;
  /// Full adds associativity and the interchange scan.
  static TwoGroupoid build(FiniteGroupoid one, std::vector<Arr> l, std::vector<Arr> u,
                           const FiniteGroupoid::ComposeFn& vcompose, const FiniteGroupoid::ComposeFn& hcompose,
                           Check check = Check::Full);

  const FiniteGroupoid& one() const noexcept { return one_; }
  const FiniteGroupoid& vert() const noexcept { return vert_; }
  const FiniteGroupoid& horiz() const noexcept { return horiz_; }

  std::size_t num_objects() const noexcept { return one_.num_objects(); }
  std::size_t num_arrows() const noexcept { return one_.num_arrows(); }
  std::size_t num_cells() const noexcept { return vert_.num_arrows(); }

  Arr l(Cell c) const noexcept { return vert_.src(c); }
  Arr u(Cell c) const noexcept { return vert_.tgt(c); }
  Obj s(Cell c) const noexcept { return horiz_.src(c); }
  Obj t(Cell c) const noexcept { return horiz_.tgt(c); }
  Cell vm(Cell b, Cell a) const noexcept { return vert_.comp(b, a); }
  Cell hm(Cell a, Cell b) const noexcept { return horiz_.comp(a, b); }
  Cell vid(Arr a) const noexcept { return vert_.idn(a); }
  Cell vinv(Cell c) const noexcept { return vert_.inv(c); }
  Cell hinv(Cell c) const noexcept { return horiz_.inv(c); }
  /// vid(a) ∘ₕ c and c ∘ₕ vid(a).
  Cell whisker_left(Arr a, Cell c) const noexcept { return hm(vid(a), c); }
  Cell whisker_right(Cell c, Arr a) const noexcept { return hm(c, vid(a)); }

  /// Exhaustive check of every invariant, including interchange.
  void check_axioms() const;

  bool operator==(const TwoGroupoid& other) const {
    return one_ == other.one_ && vert_ == other.vert_ && horiz_ == other.horiz_;
  }

  std::vector<std::string>& cell_names() { return vert_.arrow_names; }
  const std::vector<std::string>& cell_names() const { return vert_.arrow_names; }
  std::vector<std::string>& arrow_names() { return one_.arrow_names; }
  std::vector<std::string>& object_names() { return one_.object_names; }

 private:
  void check_structure() const;
  void check_interchange() const;

  FiniteGroupoid one_, vert_, horiz_;
};

struct TwoMorphism {
  std::vector<Obj> f0;
  std::vector<Arr> f1;
  std::vector<Cell> f2;
  bool operator==(const TwoMorphism&) const = default;
};

void validate_two_morphism(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f);
bool is_two_morphism(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f);
TwoMorphism identity_two_morphism(const TwoGroupoid& g);
/// outer ∘ inner.
TwoMorphism compose(const TwoMorphism& outer, const TwoMorphism& inner);

/// Γ with identity 2-cells only; cell ids equal arrow ids.
TwoGroupoid as_two_groupoid(const FiniteGroupoid& g);
TwoGroupoid point_two_groupoid();

/// A crossed module of groupoids X →ρ Γ over Γ₀ with a right action of Γ on X.
/// X is a bundle of groups (loops only); x^γ is defined when t(γ) is the base
/// point of x and lands over s(γ).
struct CrossedModuleGpd {
  FiniteGroupoid X;
  FiniteGroupoid gamma;
  GroupoidMorphism rho;
  std::vector<Arr> action;  // action[x * |Γ₁| + γ], kNone where undefined

  Arr act(Arr x, Arr g) const { return action[x * gamma.num_arrows() + g]; }
  /// Throws NotAMorphism for ρ, NotAHomomorphism for the action and
  /// InvariantViolation for either Peiffer identity.
  void validate() const;
};

/// One-object crossed module G →ρ H with the given right action.
CrossedModuleGpd group_crossed_module(const FiniteGroup& g, const FiniteGroup& h, const GroupHom& rho,
                                      const RightAction& action);
/// G → Aut(G), g ↦ AD_g, with g^φ = φ⁻¹(g).
CrossedModuleGpd aut_crossed_module(const FiniteGroup& g, const Automorphisms& aut);
/// A → 1 for an abelian group A.
CrossedModuleGpd abelian_crossed_module(const FiniteGroup& a);
/// Loops S_Γ → Γ with the conjugation action x^γ = γ⁻¹xγ.
CrossedModuleGpd loops_crossed_module(const FiniteGroupoid& g);

struct CmTwoGroupoid {
  TwoGroupoid two;
  std::vector<std::pair<Arr, Arr>> cells;  // (x, γ) with x over t(γ), γ-major
  Cell cell(Arr x, Arr g) const;

  std::vector<std::size_t> offset_;  // first cell of each γ
  std::vector<std::uint32_t> xpos_;  // position of x among loops at its base
};

/// Cells (x, γ); l = γ, u = ρ(x)γ,
/// (x',γ') ∘ₕ (x,γ) = (x'·x^{γ'⁻¹}, γ'γ), (x', ρ(x)γ) ∘ᵥ (x,γ) = (x'x, γ).
CmTwoGroupoid cm_to_two_groupoid(const CrossedModuleGpd& cm);

struct TwoGroupoidCm {
  CrossedModuleGpd cm;
  std::vector<Cell> cells;  // X arrow ↦ cell of the 2-groupoid
};

/// X = cells whose lower boundary is an identity, product ∘ₕ, ρ = u,
/// g^h = vid(h⁻¹) ∘ₕ g ∘ₕ vid(h).
TwoGroupoidCm two_groupoid_to_cm(const TwoGroupoid& t);

/// Verifies that α ↦ (α ∘ₕ vid(l(α)⁻¹), l(α)) is an isomorphism onto the
/// rebuilt 2-groupoid.
Verdict check_two_groupoid_roundtrip(const TwoGroupoid& t);
/// Verifies that x ↦ (x, 1) is an isomorphism of crossed modules onto the
/// rebuilt crossed module.
Verdict check_crossed_module_roundtrip(const CrossedModuleGpd& cm);

struct PulledBackTwoGroupoid {
  TwoGroupoid two;
  TwoMorphism projection;
  std::vector<std::array<std::uint32_t, 3>> arrows;  // (m, γ, n)
  std::vector<std::array<std::uint32_t, 3>> cells;   // (m, α, n)
};

/// Δ[M] for a surjection f: M → Δ₀; throws NotSurjective.
PulledBackTwoGroupoid pullback_two_groupoid(const TwoGroupoid& delta, std::span<const Obj> f);

/// f₀ surjective, Γ₁ → Δ₁[Γ₀] surjective, and Γ₂ → Δ₂[Γ₀] bijective on every
/// set of 2-cells between two fixed 1-arrows.
Verdict is_morita_2(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f);

struct FiberProduct {
  TwoGroupoid two;
  TwoMorphism first, second;
  std::vector<std::pair<Obj, Obj>> objects;
  std::vector<std::pair<Arr, Arr>> arrows;
  std::vector<std::pair<Cell, Cell>> cells;
};

/// A ×_C B: pairs agreeing in C at every level, structure componentwise.
FiberProduct fiber_product(const TwoGroupoid& a, const TwoGroupoid& b, const TwoGroupoid& c, const TwoMorphism& f,
                           const TwoMorphism& g);
FiberProduct product(const TwoGroupoid& a, const TwoGroupoid& b);

/// A 2-transformation between f, g: Γ → Δ. phi[m]: f₀(m) → g₀(m) and psi[i]
/// is a 2-cell from φ(t(i))·f₁(i) to g₁(i)·φ(s(i)).
struct Nat2 {
  std::vector<Arr> phi;
  std::vector<Cell> psi;
};

inline constexpr std::size_t kDefaultNat2Budget = 1'000'000;

Verdict check_nat2(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f, const TwoMorphism& g,
                   const Nat2& w);
/// Turns a witness for (f, g) into one for (g, f).
Nat2 reverse_nat2(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f, const TwoMorphism& g,
                  const Nat2& w);
/// Backtracking with propagation; the budget bounds the number of tentative
/// assignments. Throws BudgetExceeded when it runs out before a verdict.
std::optional<Nat2> nat2_search(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f,
                                const TwoMorphism& g, std::size_t budget = kDefaultNat2Budget);

}  // namespace gerbekit
