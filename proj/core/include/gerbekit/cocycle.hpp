#pragma once

#include <array>
#include <map>
#include <memory>

#include "gerbekit/extension.hpp"
#include "gerbekit/linalg.hpp"
#include "gerbekit/nerve.hpp"

namespace gerbekit {

/// A finite set X = {0..n-1} with a list of subsets covering it.
struct Cover {
  std::size_t space_size = 0;
  std::vector<std::vector<std::uint32_t>> opens;

  bool contains(std::uint32_t i, std::uint32_t x) const;
  /// Points lying in every listed open, increasing.
  std::vector<std::uint32_t> common(std::initializer_list<std::uint32_t> idx) const;
  std::size_t size() const noexcept { return opens.size(); }
};

/// Sorts and deduplicates each open; throws NotACover if a point is outside X
/// or uncovered.
Cover make_cover(std::size_t space_size, std::vector<std::vector<std::uint32_t>> opens);

using Key3 = std::array<std::uint32_t, 3>;
using Key4 = std::array<std::uint32_t, 4>;

/// λ_{ij}(x) as a value table on G, keyed (i, j, x); g_{ijk}(x) keyed (i, j, k, x).
/// Every ordered tuple of opens containing x needs an entry, repeated indices
/// included.
struct NonAbCocycle {
  FiniteGroup G;
  std::map<Key3, std::vector<Elem>> lambda;
  std::map<Key4, Elem> g;
};

struct CocycleReport {
  Verdict tables;     // every entry present and every λ an automorphism
  Verdict identity1;  // λij∘λjk = AD_{gijk}∘λik
  Verdict identity2;  // gijk·gikl = λij(gjkl)·gijl
  bool ok() const { return tables.ok && identity1.ok && identity2.ok; }
  std::string summary() const;
};

CocycleReport validate_nonab(const NonAbCocycle& c, const Cover& cover);

struct CocycleBundle {
  Span span;
  CechGroupoid cech;
  std::shared_ptr<const AutTarget> target;
};

/// The apex ⊔U_ij×G×G ⇉ ⊔U_ij×G ⇉ ⊔U_i. Arrow (x,i,j,α) has id a·|G| + α for
/// the Čech arrow a = (x,i,j), cell (a, g₁, g₂) has id (a·|G| + g₁)·|G| + g₂,
/// l = (a, g₁), u = (a, g₂) and
///   (x,i,j,α)·(x,j,k,β) = (x,i,k, α·λij(β)·gijk).
/// Built with the full axiom scan, so an invalid table throws from the scan.
TwoGroupoid cocycle_apex(const NonAbCocycle& c, const CechGroupoid& cech);

/// X ← apex → [G → Aut(G)] with f(x,i,j,g₁,g₂) = (g₂g₁⁻¹, AD_{g₁}∘λij(x)).
/// Throws InvalidCocycle with the report summary unless validate_nonab passes.
CocycleBundle cocycle_to_bundle(const NonAbCocycle& c, const Cover& cover,
                                std::shared_ptr<const AutTarget> target = nullptr);

/// A abelian (a finite cyclic group standing in for the circle), g keyed (i,j,k,x).
struct AbCocycle {
  FiniteGroup A;
  std::map<Key4, Elem> g;
};

/// gjkl − gikl + gijl − gijk = 0 on every quadruple containing x.
Verdict validate_ab(const AbCocycle& c, const Cover& cover);

/// g'ijk = gijk + hjk − hik + hij for a 1-cochain h keyed (i, j, x).
AbCocycle add_coboundary(const AbCocycle& c, const std::map<Key3, Elem>& h);

struct CechExtension {
  GExtension extension;
  CechGroupoid cech;
};

/// ⊔U_ij×A ⇉ ⊔U_i with (x,i,j,a)·(x,j,k,b) = (x,i,k, gijk+a+b), a central
/// A-extension of the Čech groupoid; a at (x,i) embeds as (x,i,i, a − giii).
/// Throws InvalidCocycle, or AssociativityFailure when validation is skipped
/// and the multiplication is not associative.
CechExtension ab_cocycle_to_central_extension(const AbCocycle& c, const Cover& cover, bool validate = true);

/// The groupoid cochain τ ↦ χ(gijk(x)) on N₂ of the Čech groupoid, where τ has
/// edges (x,j,k), (x,i,j) and composite (x,i,k).
FpVector ab_cocycle_cochain(const DeltaSet& cech_nerve, const CechGroupoid& cech, const AbCocycle& c,
                            const std::vector<std::uint32_t>& chi, std::uint32_t p);

}  // namespace gerbekit
