#pragma once

#include <functional>
#include <memory>

#include "gerbekit/two_groupoid.hpp"

namespace gerbekit {

using TwoGroupoidPtr = std::shared_ptr<const TwoGroupoid>;

/// A generalized morphism base ⇝ target in normal form
/// base ←left– apex –right→ target, with the left leg Morita.
struct Span {
  TwoGroupoidPtr base, apex, target;
  TwoMorphism left, right;
};

/// Validates both legs; throws NotMorita with the witness if the left leg fails.
Span make_span(TwoGroupoidPtr base, TwoGroupoidPtr apex, TwoGroupoidPtr target, TwoMorphism left,
               TwoMorphism right);
Span identity_span(const TwoGroupoidPtr& g);
/// A strict morphism f: base → target as the span base ← base → target.
Span span_of_morphism(const TwoGroupoidPtr& base, const TwoGroupoidPtr& target, TwoMorphism f);

/// G ∘ F for F: Γ ⇝ Δ and G: Δ ⇝ Σ, with apex the strict fiber product of
/// F's right leg and G's left leg. Throws IncompatibleSpans when the middle
/// 2-groupoids differ and EmptyApex when the fiber product has no objects.
Span compose_spans(const Span& f, const Span& g);

/// F*(B) for F: Γ' ⇝ Γ and a bundle B: Γ ⇝ [G→H].
Span pullback_bundle(const Span& f, const Span& b);

/// Sum of two bundles over the same base, into the product of their targets.
/// Pairs (x, y) in the product target have id x·|B'| + y at every level.
Span whitney_sum(const Span& b1, const Span& b2);

enum class Equivalence { Equivalent, NotEquivalentByCohomology, Unknown };

const char* to_string(Equivalence e);

struct SpanComparison {
  Equivalence result = Equivalence::Unknown;
  /// The common refinement E ×_Γ E' of the two apexes over the base.
  FiberProduct refinement;
  /// Relates the two right legs pulled back to the refinement.
  std::optional<Nat2> witness;
};

/// Returns true when some invariant (cohomology) tells the two spans apart.
using SpanDistinguisher = std::function<bool(const Span&, const Span&)>;

/// Semi-decides equivalence of two spans Γ ⇝ Δ: refines both to the fiber
/// product of their apexes over Γ and searches for a 2-transformation between
/// the pulled-back right legs. Without a witness the distinguisher, if given,
/// may upgrade Unknown to NotEquivalentByCohomology. A spent budget is Unknown.
SpanComparison compare_spans(const Span& f, const Span& g, std::size_t budget = kDefaultNat2Budget,
                             const SpanDistinguisher& distinguish = {});

}  // namespace gerbekit
