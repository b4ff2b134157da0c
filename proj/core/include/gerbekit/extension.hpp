#pragma once

#include <memory>
#include <optional>

#include "gerbekit/span.hpp"

namespace gerbekit {

/// M×G →i Γ̃ →φ Γ ⇉ M. The bundle arrow g_m has id m·|G| + g.
struct GExtension {
  FiniteGroup G;
  FiniteGroupoid tilde;
  FiniteGroupoid base;
  GroupoidMorphism i;
  GroupoidMorphism phi;

  std::size_t num_objects() const { return tilde.num_objects(); }
  Arr embed(Obj m, Elem g) const { return i.f1[m * G.order() + g]; }
  /// g with x = i(g_m), or kNone when x is not in the image of i.
  Elem kernel_element(Arr x) const { return kernel_[x]; }

  std::vector<Elem> kernel_;
};

/// Validates injectivity of i, surjectivity of φ and exactness; the errors
/// NotInjective, NotSurjective, NotExact name a witnessing arrow.
GExtension make_extension(FiniteGroup G, FiniteGroupoid tilde, FiniteGroupoid base, GroupoidMorphism i,
                          GroupoidMorphism phi);

/// Γ × G → Γ.
GExtension trivial_extension(const FiniteGroupoid& base, const FiniteGroup& G);
/// N → Ĝ → Ĝ/N over one object, with N given by element ids of Ĝ.
GExtension group_extension(const FiniteGroup& big, std::vector<Elem> normal);

struct PulledBackExtension {
  GExtension extension;
  GroupoidMorphism tilde_projection;
  GroupoidMorphism base_projection;
};

/// Pullback along f: M' → M (surjective).
PulledBackExtension pullback_extension(const GExtension& e, std::span<const Obj> f);

/// The crossed module G → Aut(G) and its 2-group, shared by bundles over it.
struct AutTarget {
  FiniteGroup G;
  Automorphisms aut;
  CmTwoGroupoid cm;
  TwoGroupoidPtr two;
};

std::shared_ptr<const AutTarget> make_aut_target(const FiniteGroup& g);

/// AD_x ∈ Aut(G) for an arrow x of Γ̃: i(AD_x(g)) = x·i(g)·x⁻¹.
Elem ad_of(const GExtension& e, const Automorphisms& aut, Arr x);

struct ExtensionBundle {
  Span span;
  std::vector<std::pair<Arr, Arr>> cells;  // apex cell (γ̃₁, γ̃₂), φ(γ̃₁) = φ(γ̃₂)
  std::shared_ptr<const AutTarget> target;
};

/// Γ ← (Γ̃×_Γ Γ̃ ⇉ Γ̃ ⇉ M) → [G → Aut(G)], with l(γ̃₁,γ̃₂) = γ̃₂,
/// u = γ̃₁, and right leg (γ̃₁,γ̃₂) ↦ (g, AD_{γ̃₂}) where γ̃₁γ̃₂⁻¹ = i(g).
ExtensionBundle extension_to_bundle(const GExtension& e, std::shared_ptr<const AutTarget> target = nullptr);

struct BundleExtension {
  GExtension extension;
  /// H → Γ, Morita.
  GroupoidMorphism to_base;
  /// The kernel bundle L with its embedding j = u into Δ₁.
  GroupoidMorphism j;
};

/// For a span Γ ← Δ → [G → Aut(G)] with Γ a 1-groupoid: H̃ = (Δ₁ ⋉ G)/L
/// with (a,g)(b,h) = (ab, g^{f(b)}·h) and L embedded by l ↦ (j(l), f(l)⁻¹).
/// Throws NotInjectiveKernel if j is not injective.
BundleExtension bundle_to_extension(const Span& b, const AutTarget& target);

struct ExtensionIso {
  GroupoidMorphism tilde;
  GroupoidMorphism base;
};

/// Isomorphism e ≅ e' that is the identity on objects and on G and commutes
/// with φ, or nullopt.
std::optional<ExtensionIso> extension_iso_search(const GExtension& e, const GExtension& other);

/// Isomorphism between e and bundle_to_extension(extension_to_bundle(e));
/// throws NoIsoFound.
ExtensionIso roundtrip_check(const GExtension& e);

struct CentralData {
  QuotientGroupoid q;             // Γ̃ → Γ̃/Z(G)
  GroupoidMorphism sigma;         // Γ → Γ̃/Z(G), a section of φ'
  Subgroupoid tgprime;            // q⁻¹(σ(Γ))
  Subgroup center;                // Z(G) ⊂ G
  Quotient gz;                    // G → G/Z(G)
  std::vector<Elem> r;            // Γ̃ → G/Z(G)
};

/// First groupoid section σ (lexicographic on arrow images) for which every
/// arrow of q⁻¹(σ(Γ)) commutes with i(G); nullopt after exhausting them.
std::optional<CentralData> is_central(const GExtension& e);

/// Throws InvalidCentralData unless every invariant of cd holds for e.
void validate_central_data(const GExtension& e, const CentralData& cd);

struct CentralReduction {
  GExtension extension;             // Z(G)-extension Γ̃' → Γ
  Span span;                        // Γ ⇝ [Z(G) → 1]
  std::vector<std::pair<Arr, Arr>> cells;
  TwoMorphism inclusion;            // [Z(G) → 1] → [G → Aut(G)]
  std::shared_ptr<const AutTarget> target;
};

CentralReduction central_reduction(const GExtension& e, const CentralData& cd,
                                   std::shared_ptr<const AutTarget> target = nullptr);

/// Both squares over f: M → N are 1-Morita and f is surjective; the pair must
/// commute with i and φ.
Verdict is_morita_ext(const GExtension& e, const GExtension& other, std::span<const Obj> f,
                      const GroupoidMorphism& f_tilde, const GroupoidMorphism& f_base);

}  // namespace gerbekit
