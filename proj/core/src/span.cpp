#include "gerbekit/span.hpp"

#include "gerbekit/error.hpp"

namespace gerbekit {

Span make_span(TwoGroupoidPtr base, TwoGroupoidPtr apex, TwoGroupoidPtr target, TwoMorphism left,
               TwoMorphism right) {
  validate_two_morphism(*apex, *target, right);
  if (auto v = is_morita_2(*apex, *base, left); !v) fail(ErrorKind::NotMorita, v.witness);
  return Span{std::move(base), std::move(apex), std::move(target), std::move(left), std::move(right)};
}

Span identity_span(const TwoGroupoidPtr& g) {
  return make_span(g, g, g, identity_two_morphism(*g), identity_two_morphism(*g));
}

Span span_of_morphism(const TwoGroupoidPtr& base, const TwoGroupoidPtr& target, TwoMorphism f) {
  return make_span(base, base, target, identity_two_morphism(*base), std::move(f));
}

Span compose_spans(const Span& f, const Span& g) {
  if (f.target != g.base && !(*f.target == *g.base)) {
    fail(ErrorKind::IncompatibleSpans, "middle 2-groupoids differ");
  }
  auto fp = fiber_product(*f.apex, *g.apex, *f.target, f.right, g.left);
  if (fp.two.num_objects() == 0) fail(ErrorKind::EmptyApex, "fiber product of the apexes has no objects");
  auto left = compose(f.left, fp.first);
  auto right = compose(g.right, fp.second);
  return make_span(f.base, std::make_shared<const TwoGroupoid>(std::move(fp.two)), g.target, std::move(left),
                   std::move(right));
}

Span pullback_bundle(const Span& f, const Span& b) { return compose_spans(f, b); }

Span whitney_sum(const Span& b1, const Span& b2) {
  if (b1.base != b2.base && !(*b1.base == *b2.base)) fail(ErrorKind::IncompatibleSpans, "bases differ");
  auto apex = fiber_product(*b1.apex, *b2.apex, *b1.base, b1.left, b2.left);
  auto target = product(*b1.target, *b2.target);
  const auto& t2 = *b2.target;
  TwoMorphism right;
  for (auto [x, y] : apex.objects) right.f0.push_back(b1.right.f0[x] * t2.num_objects() + b2.right.f0[y]);
  for (auto [x, y] : apex.arrows) right.f1.push_back(b1.right.f1[x] * t2.num_arrows() + b2.right.f1[y]);
  for (auto [x, y] : apex.cells) right.f2.push_back(b1.right.f2[x] * t2.num_cells() + b2.right.f2[y]);
  auto left = compose(b1.left, apex.first);
  return make_span(b1.base, std::make_shared<const TwoGroupoid>(std::move(apex.two)),
                   std::make_shared<const TwoGroupoid>(std::move(target.two)), std::move(left), std::move(right));
}

const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Equivalent:
      return "Equivalent";
    case Equivalence::NotEquivalentByCohomology:
      return "NotEquivalentByCohomology";
    case Equivalence::Unknown:
      break;
  }
  return "Unknown";
}

SpanComparison compare_spans(const Span& f, const Span& g, std::size_t budget, const SpanDistinguisher& distinguish) {
  if (f.base != g.base && !(*f.base == *g.base)) fail(ErrorKind::IncompatibleSpans, "bases differ");
  if (f.target != g.target && !(*f.target == *g.target)) fail(ErrorKind::IncompatibleSpans, "targets differ");
  SpanComparison out;
  out.refinement = fiber_product(*f.apex, *g.apex, *f.base, f.left, g.left);
  const auto a = compose(f.right, out.refinement.first);
  const auto b = compose(g.right, out.refinement.second);
  try {
    out.witness = nat2_search(out.refinement.two, *f.target, a, b, budget);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
  }
  if (out.witness) {
    out.result = Equivalence::Equivalent;
  } else if (distinguish && distinguish(f, g)) {
    out.result = Equivalence::NotEquivalentByCohomology;
  }
  return out;
}

}  // namespace gerbekit
