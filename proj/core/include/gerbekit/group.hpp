#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace gerbekit {

using Elem = std::uint32_t;
inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

/// Reads GERBEKIT_CAP from the environment, falling back to `fallback`.
std::size_t cap_from_env(std::size_t fallback);

/// A finite group stored as a dense Cayley table over ids 0..n-1.
/// table[a * n + b] is the product a·b.
class FiniteGroup {
 public:
  FiniteGroup();  // trivial group

  /// Validates associativity, unit and inverses; throws Error naming the
  /// violating tuple otherwise.
  static FiniteGroup from_table(const std::vector<std::vector<Elem>>& table,
                                std::vector<std::string> names = {});

  std::size_t order() const noexcept { return n_; }
  Elem mul(Elem a, Elem b) const noexcept { return table_[a * n_ + b]; }
  Elem inv(Elem a) const noexcept { return inv_[a]; }
  Elem unit() const noexcept { return unit_; }
  Elem conj(Elem g, Elem x) const noexcept { return mul(mul(g, x), inv(g)); }  // g x g⁻¹
  std::size_t elem_order(Elem a) const;
  bool is_abelian() const;

  const std::string& name(Elem a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::span<const Elem> table() const noexcept { return table_; }
  std::vector<std::vector<Elem>> rows() const;

  bool operator==(const FiniteGroup& other) const {
    return n_ == other.n_ && table_ == other.table_;
  }

 private:
  std::size_t n_ = 1;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  Elem unit_ = 0;
  std::vector<std::string> names_;
};

FiniteGroup trivial_group();
FiniteGroup cyclic_group(std::size_t n);
/// Permutations of {0..k-1}; composition (στ)(x) = σ(τ(x)), identity first.
FiniteGroup symmetric_group(std::size_t k);
/// Element (g, h) has id g * |H| + h.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

struct GroupHom {
  std::vector<Elem> map;
  Elem operator()(Elem g) const { return map[g]; }
};

bool is_homomorphism(const FiniteGroup& dom, const FiniteGroup& cod, std::span<const Elem> map);
GroupHom make_hom(const FiniteGroup& dom, const FiniteGroup& cod, std::vector<Elem> map);
std::vector<Elem> kernel(const FiniteGroup& dom, const FiniteGroup& cod, const GroupHom& hom);

/// Right action of `actor` on `acted`: table[g * |actor| + h] = g^h.
struct RightAction {
  std::size_t actor_order = 0;
  std::vector<Elem> table;
  Elem operator()(Elem g, Elem h) const { return table[g * actor_order + h]; }
};

/// Throws unless every g ↦ g^h is an automorphism and the action law holds.
void validate_action(const FiniteGroup& acted, const FiniteGroup& actor, const RightAction& act);

/// Aut(G) with elements ordered lexicographically by their value tables, so the
/// identity automorphism always has id 0. Product is composition φ·ψ = φ∘ψ and
/// the right action on G is g^φ = φ⁻¹(g).
struct Automorphisms {
  FiniteGroup group;
  std::vector<std::vector<Elem>> maps;
  RightAction action;

  /// Id of the automorphism with this value table, or kNone.
  Elem find(std::span<const Elem> map) const;
  Elem apply(Elem phi, Elem g) const { return maps[phi][g]; }
};

inline constexpr std::size_t kDefaultAutCap = 24;

Automorphisms automorphism_group(const FiniteGroup& g, std::size_t cap = cap_from_env(kDefaultAutCap));

struct Subgroup {
  FiniteGroup group;
  GroupHom inclusion;
};

/// Subgroup on the given element ids (kept in increasing id order).
Subgroup subgroup(const FiniteGroup& g, std::vector<Elem> elems);
Subgroup center(const FiniteGroup& g);
std::vector<Elem> center_elements(const FiniteGroup& g);

/// g ↦ AD_g = (x ↦ g x g⁻¹) as a homomorphism into `aut.group`.
GroupHom inner_hom(const FiniteGroup& g, const Automorphisms& aut);

struct Quotient {
  FiniteGroup group;
  GroupHom projection;
  /// Smallest element id of each coset, in coset-id order.
  std::vector<Elem> representatives;
};

/// Cosets are numbered by their smallest member.
Quotient quotient_group(const FiniteGroup& g, std::span<const Elem> normal);

/// All homomorphisms G → Z/p, lexicographic by value table.
std::vector<std::vector<std::uint32_t>> characters(const FiniteGroup& g, std::uint32_t p);

}  // namespace gerbekit
