#pragma once

#include <memory>

#include "gerbekit/extension.hpp"
#include "gerbekit/linalg.hpp"
#include "gerbekit/nerve.hpp"

namespace gerbekit {

/// Face cochain complex of a Δ-set over F_p: δ(c)(τ) = Σ (−1)^i c(d_i τ).
class FpComplex {
 public:
  struct Entry {
    std::uint32_t col;
    std::uint32_t coef;
  };

  /// Builds δ_q for q < max_dim and checks δ² = 0 (InvariantViolation).
  FpComplex(const DeltaSet& n, std::uint32_t p);

  std::uint32_t prime() const noexcept { return p_; }
  std::size_t max_dim() const noexcept { return dims_.size() - 1; }
  std::size_t dim(std::size_t q) const { return dims_[q]; }
  /// Row τ ∈ N_{q+1} of δ_q.
  std::span<const Entry> row(std::size_t q, std::uint32_t tau) const;

  FpVector apply(std::size_t q, const FpVector& c) const;
  bool is_cocycle(std::size_t q, const FpVector& c) const;

 private:
  std::uint32_t p_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Entry>> entries_;
  std::vector<std::vector<std::size_t>> offsets_;
};

/// Hᵠ with a deterministic basis of representative cocycles.
class Cohomology {
 public:
  /// Needs δ_q, so q ≤ max_dim − 1; throws DegreeOutOfRange otherwise.
  Cohomology(const FpComplex& c, std::size_t q);

  std::size_t degree() const noexcept { return q_; }
  std::uint32_t prime() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<FpVector>& basis() const noexcept { return basis_; }
  /// Coordinates of [z] in the basis; throws InvariantViolation if z ∉ Zᵠ.
  std::vector<std::uint32_t> coordinates(const FpVector& z) const;

 private:
  std::size_t q_;
  std::uint32_t p_;
  std::vector<FpVector> basis_;
  Echelon reduced_;
};

struct CohClass {
  std::size_t degree = 0;
  std::uint32_t p = 2;
  std::vector<std::uint32_t> coordinates;
  FpVector representative;

  bool is_zero() const;
};

/// Nerve, cochain complex and cohomology in degrees 0..max_degree.
struct NerveCohomology {
  DeltaSet nerve;
  std::unique_ptr<FpComplex> complex;
  std::vector<Cohomology> h;

  const Cohomology& operator[](std::size_t q) const;
};

NerveCohomology nerve_cohomology(const TwoGroupoid& t, std::size_t max_degree, std::uint32_t p,
                                 std::size_t cap = cap_from_env(kDefaultNerveCap));

/// f on q-simplices: vertices, edges and triangles mapped through f0, f1, f2.
std::vector<std::uint32_t> simplex_map(const DeltaSet& dom, const DeltaSet& cod, const TwoMorphism& f, std::size_t q);

/// f*: Hᵠ(cod) → Hᵠ(dom), column k = coordinates of f*(basis_k).
FpMatrix induced_map(const NerveCohomology& dom, const NerveCohomology& cod, const TwoMorphism& f, std::size_t q);
FpMatrix induced_map(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f, std::size_t q,
                     std::uint32_t p);

/// Pullback of a single class.
CohClass pull_back(const NerveCohomology& dom, const NerveCohomology& cod, const TwoMorphism& f,
                   const CohClass& c);

/// (φ*)⁻¹·f*: Hᵠ(target) → Hᵠ(base) for the span base ←φ– apex –f→ target.
/// Throws MoritaMapNotInvertible if φ* is not invertible.
FpMatrix characteristic_map(const NerveCohomology& base, const NerveCohomology& apex, const NerveCohomology& target,
                            const Span& s, std::size_t q);
FpMatrix characteristic_map(const Span& s, std::size_t q, std::uint32_t p);

/// The cochain α ↦ χ(α) on N₂[A → 1]; χ must be a homomorphism A → Z/p.
CohClass canonical_class(const NerveCohomology& a_one, const FiniteGroup& A, const std::vector<std::uint32_t>& chi);
CohClass canonical_class(const FiniteGroup& A, const std::vector<std::uint32_t>& chi, std::uint32_t p);

/// Throws NotACharacter unless chi is a homomorphism G → Z/p.
void validate_character(const FiniteGroup& g, const std::vector<std::uint32_t>& chi, std::uint32_t p);

/// Section 2-cocycle of a central extension by an abelian group A, pushed
/// through χ: A → Z/p, as a class in H²(nerve of the base). σ̂ takes the
/// smallest lift of each base arrow, and identities to identities.
/// Throws NotAbelianKernel or NotCentral.
CohClass extension_class(const NerveCohomology& base, const GExtension& e, const std::vector<std::uint32_t>& chi);
CohClass extension_class(const GExtension& e, const std::vector<std::uint32_t>& chi, std::uint32_t p);

/// The section cocycle c(g₂, g₁) with σ̂(g₂)·σ̂(g₁) = i(c)·σ̂(g₂g₁) on N₂ of the base,
/// for an explicit section (one Γ̃ arrow per base arrow).
FpVector section_cocycle(const DeltaSet& base, const GExtension& e, const std::vector<Arr>& section,
                         const std::vector<std::uint32_t>& chi, std::uint32_t p);
std::vector<Arr> first_section(const GExtension& e);

/// Distinguisher for compare_spans: characteristic maps differ in some degree
/// 0..max_degree.
SpanDistinguisher cohomology_distinguisher(std::size_t max_degree, std::uint32_t p);

}  // namespace gerbekit
