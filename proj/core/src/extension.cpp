#include "gerbekit/extension.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "gerbekit/error.hpp"

namespace gerbekit {

namespace {

std::string arr_str(Arr a) { return "arrow " + std::to_string(a); }

bool is_identity_on_objects(const GroupoidMorphism& f) {
  for (Obj o = 0; o < f.f0.size(); ++o)
    if (f.f0[o] != o) return false;
  return true;
}

struct ExtensionApex {
  TwoGroupoidPtr two;
  std::vector<std::pair<Arr, Arr>> cells;
};

// Γ̃ ×_Γ Γ̃ ⇉ Γ̃ ⇉ M.
ExtensionApex extension_apex(const GExtension& e) {
  const auto& t = e.tilde;
  ExtensionApex out;
  std::unordered_map<std::uint64_t, Cell> index;
  auto key = [&](Arr a, Arr b) { return std::uint64_t{a} * t.num_arrows() + b; };
  std::vector<Arr> l, u;
  for (Arr g1 = 0; g1 < t.num_arrows(); ++g1) {
    for (Arr g2 : t.hom(t.src(g1), t.tgt(g1))) {
      if (e.phi.f1[g1] != e.phi.f1[g2]) continue;
      index.emplace(key(g1, g2), static_cast<Cell>(out.cells.size()));
      out.cells.emplace_back(g1, g2);
      l.push_back(g2);
      u.push_back(g1);
    }
  }
  const auto& cells = out.cells;
  auto two = TwoGroupoid::build(
      t, l, u, [&](Cell b, Cell a) { return index.at(key(cells[b].first, cells[a].second)); },
      [&](Cell a, Cell b) {
        return index.at(key(t.comp(cells[a].first, cells[b].first), t.comp(cells[a].second, cells[b].second)));
      },
      TwoGroupoid::Check::Structure);
  for (Cell c = 0; c < cells.size(); ++c) {
    two.cell_names()[c] = "(" + t.arrow_names[cells[c].first] + "," + t.arrow_names[cells[c].second] + ")";
  }
  out.two = std::make_shared<const TwoGroupoid>(std::move(two));
  return out;
}

// The left leg Γ̃×_Γ Γ̃ → Γ, and Γ as a 2-groupoid.
std::pair<TwoGroupoidPtr, TwoMorphism> extension_left_leg(const GExtension& e, const ExtensionApex& apex) {
  auto base = std::make_shared<const TwoGroupoid>(as_two_groupoid(e.base));
  TwoMorphism left;
  left.f0.resize(e.num_objects());
  std::iota(left.f0.begin(), left.f0.end(), 0);
  left.f1 = e.phi.f1;
  for (auto [g1, g2] : apex.cells) left.f2.push_back(e.phi.f1[g1]);
  return {base, left};
}

// g with γ̃₁·γ̃₂⁻¹ = i(g).
Elem cell_difference(const GExtension& e, Arr g1, Arr g2) {
  return e.kernel_element(e.tilde.comp(g1, e.tilde.inv(g2)));
}

}  // namespace

GExtension make_extension(FiniteGroup G, FiniteGroupoid tilde, FiniteGroupoid base, GroupoidMorphism i,
                          GroupoidMorphism phi) {
  const std::size_t m = tilde.num_objects();
  if (base.num_objects() != m) fail(ErrorKind::NotAMorphism, "Γ̃ and Γ have different object sets");
  const auto bundle = trivial_bundle(m, G);
  validate_morphism(bundle, tilde, i);
  validate_morphism(tilde, base, phi);
  if (!is_identity_on_objects(i) || !is_identity_on_objects(phi)) {
    fail(ErrorKind::NotAMorphism, "i and φ must be the identity on objects");
  }
  GExtension e;
  e.kernel_.assign(tilde.num_arrows(), kNone);
  for (Arr k = 0; k < bundle.num_arrows(); ++k) {
    if (e.kernel_[i.f1[k]] != kNone) fail(ErrorKind::NotInjective, "i hits " + arr_str(i.f1[k]) + " twice");
    e.kernel_[i.f1[k]] = static_cast<Elem>(k % G.order());
  }
  std::vector<std::size_t> fiber(base.num_arrows(), 0);
  for (Arr x = 0; x < tilde.num_arrows(); ++x) ++fiber[phi.f1[x]];
  for (Arr a = 0; a < base.num_arrows(); ++a)
    if (fiber[a] == 0) fail(ErrorKind::NotSurjective, "φ misses base " + arr_str(a));
  for (Arr k = 0; k < bundle.num_arrows(); ++k) {
    if (!base.is_identity(phi.f1[i.f1[k]])) {
      fail(ErrorKind::NotExact, "φ(i(g)) is not an identity at " + arr_str(i.f1[k]));
    }
  }
  // x·i(G) lies in the φ-fiber of x and has |G| elements, so equal sizes
  // force the fiber to be exactly that coset.
  for (Arr x = 0; x < tilde.num_arrows(); ++x) {
    if (fiber[phi.f1[x]] != G.order()) {
      fail(ErrorKind::NotExact, "φ-fiber of " + arr_str(x) + " has " + std::to_string(fiber[phi.f1[x]]) +
                                    " arrows, expected " + std::to_string(G.order()));
    }
  }
  e.G = std::move(G);
  e.tilde = std::move(tilde);
  e.base = std::move(base);
  e.i = std::move(i);
  e.phi = std::move(phi);
  return e;
}

GExtension trivial_extension(const FiniteGroupoid& base, const FiniteGroup& G) {
  const auto n = static_cast<Arr>(G.order());
  auto tilde = product_groupoid(base, group_as_groupoid(G));
  tilde.object_names = base.object_names;
  for (Arr a = 0; a < tilde.num_arrows(); ++a) {
    tilde.arrow_names[a] = "(" + base.arrow_names[a / n] + "," + G.name(a % n) + ")";
  }
  GroupoidMorphism i, phi;
  i.f0.resize(base.num_objects());
  std::iota(i.f0.begin(), i.f0.end(), 0);
  phi.f0 = i.f0;
  for (Obj m = 0; m < base.num_objects(); ++m)
    for (Elem g = 0; g < n; ++g) i.f1.push_back(base.idn(m) * n + g);
  for (Arr a = 0; a < tilde.num_arrows(); ++a) phi.f1.push_back(a / n);
  return make_extension(G, std::move(tilde), base, std::move(i), std::move(phi));
}

GExtension group_extension(const FiniteGroup& big, std::vector<Elem> normal) {
  auto sub = subgroup(big, normal);
  auto quotient = quotient_group(big, normal);
  auto tilde = group_as_groupoid(big);
  auto base = group_as_groupoid(quotient.group);
  for (Arr a = 0; a < tilde.num_arrows(); ++a) tilde.arrow_names[a] = big.name(a);
  GroupoidMorphism i{{0}, sub.inclusion.map};
  GroupoidMorphism phi{{0}, quotient.projection.map};
  return make_extension(sub.group, std::move(tilde), std::move(base), std::move(i), std::move(phi));
}

PulledBackExtension pullback_extension(const GExtension& e, std::span<const Obj> f) {
  auto pt = pullback_groupoid(e.tilde, f);
  auto pb = pullback_groupoid(e.base, f);
  auto find = [](const std::vector<std::array<std::uint32_t, 3>>& v, std::array<std::uint32_t, 3> key) {
    return static_cast<Arr>(std::lower_bound(v.begin(), v.end(), key) - v.begin());
  };
  GroupoidMorphism i, phi;
  i.f0.resize(f.size());
  std::iota(i.f0.begin(), i.f0.end(), 0);
  phi.f0 = i.f0;
  for (Obj m = 0; m < f.size(); ++m)
    for (Elem g = 0; g < e.G.order(); ++g) i.f1.push_back(find(pt.triples, {m, e.embed(f[m], g), m}));
  for (const auto& [m, x, n] : pt.triples) phi.f1.push_back(find(pb.triples, {m, e.phi.f1[x], n}));
  PulledBackExtension out;
  out.tilde_projection = pt.projection;
  out.base_projection = pb.projection;
  out.extension = make_extension(e.G, std::move(pt.groupoid), std::move(pb.groupoid), std::move(i), std::move(phi));
  return out;
}

std::shared_ptr<const AutTarget> make_aut_target(const FiniteGroup& g) {
  auto out = std::make_shared<AutTarget>();
  out->G = g;
  out->aut = automorphism_group(g);
  out->cm = cm_to_two_groupoid(aut_crossed_module(g, out->aut));
  out->two = std::make_shared<const TwoGroupoid>(out->cm.two);
  return out;
}

Elem ad_of(const GExtension& e, const Automorphisms& aut, Arr x) {
  const auto& t = e.tilde;
  std::vector<Elem> map(e.G.order());
  for (Elem g = 0; g < e.G.order(); ++g) {
    map[g] = e.kernel_element(t.comp(t.comp(x, e.embed(t.src(x), g)), t.inv(x)));
  }
  const Elem phi = aut.find(map);
  if (phi == kNone) fail(ErrorKind::NotAHomomorphism, "conjugation by " + arr_str(x) + " is not an automorphism");
  return phi;
}

ExtensionBundle extension_to_bundle(const GExtension& e, std::shared_ptr<const AutTarget> target) {
  if (!target) target = make_aut_target(e.G);
  if (!(target->G == e.G)) fail(ErrorKind::IncompatibleSpans, "target built for a different group");
  auto apex = extension_apex(e);
  auto [base, left] = extension_left_leg(e, apex);
  TwoMorphism right;
  right.f0.assign(e.num_objects(), 0);
  for (Arr x = 0; x < e.tilde.num_arrows(); ++x) right.f1.push_back(ad_of(e, target->aut, x));
  for (auto [g1, g2] : apex.cells) right.f2.push_back(target->cm.cell(cell_difference(e, g1, g2), right.f1[g2]));
  ExtensionBundle out;
  out.span = make_span(base, apex.two, target->two, std::move(left), std::move(right));
  out.cells = std::move(apex.cells);
  out.target = std::move(target);
  return out;
}

BundleExtension bundle_to_extension(const Span& b, const AutTarget& target) {
  const auto& gamma = *b.base;
  for (Cell c = 0; c < gamma.num_cells(); ++c)
    if (!gamma.vert().is_identity(c)) fail(ErrorKind::IncompatibleSpans, "the base must be a 1-groupoid");
  if (b.target != target.two && !(*b.target == *target.two)) {
    fail(ErrorKind::IncompatibleSpans, "the span does not land in [G → Aut(G)]");
  }
  const auto& delta = *b.apex;
  const auto& d1 = delta.one();
  const auto& G = target.G;
  const auto n = static_cast<Arr>(G.order());

  auto kernel = two_groupoid_to_cm(delta);
  const auto& L = kernel.cm.X;
  const auto& j = kernel.cm.rho;
  std::vector<bool> hit(d1.num_arrows(), false);
  for (Arr l = 0; l < L.num_arrows(); ++l) {
    if (hit[j.f1[l]]) fail(ErrorKind::NotInjectiveKernel, "L → Δ₁ is not injective at " + arr_str(j.f1[l]));
    hit[j.f1[l]] = true;
  }
  std::vector<Elem> f_of_l;
  for (Cell c : kernel.cells) f_of_l.push_back(target.cm.cells[b.right.f2[c]].first);

  // Δ₁ ⋉ G with (a,g)(b,h) = (ab, g^{f(b)}·h).
  std::vector<Obj> src, tgt;
  for (Arr a = 0; a < d1.num_arrows(); ++a)
    for (Elem g = 0; g < n; ++g) {
      src.push_back(d1.src(a));
      tgt.push_back(d1.tgt(a));
    }
  auto twisted = FiniteGroupoid::build(d1.num_objects(), src, tgt, [&](Arr x, Arr y) {
    const Arr a = x / n, c = y / n;
    const Elem g = x % n, h = y % n;
    return d1.comp(a, c) * n + G.mul(target.aut.action(g, b.right.f1[c]), h);
  });
  GroupoidMorphism embedding;
  embedding.f0 = j.f0;
  for (Arr l = 0; l < L.num_arrows(); ++l) embedding.f1.push_back(j.f1[l] * n + G.inv(f_of_l[l]));
  auto tilde = quotient_by_bundle(twisted, L, embedding);
  auto base = quotient_by_bundle(d1, L, j);

  GroupoidMorphism i, phi;
  i.f0 = j.f0;
  phi.f0 = j.f0;
  for (Obj m = 0; m < d1.num_objects(); ++m)
    for (Elem g = 0; g < n; ++g) i.f1.push_back(tilde.projection.f1[d1.idn(m) * n + g]);
  for (Arr c = 0; c < tilde.groupoid.num_arrows(); ++c) {
    phi.f1.push_back(base.projection.f1[tilde.representatives[c] / n]);
  }
  for (Arr c = 0; c < tilde.groupoid.num_arrows(); ++c) {
    const Arr r = tilde.representatives[c];
    tilde.groupoid.arrow_names[c] = "[" + d1.arrow_names[r / n] + "," + G.name(r % n) + "]";
  }

  BundleExtension out;
  out.extension = make_extension(G, std::move(tilde.groupoid), base.groupoid, std::move(i), std::move(phi));
  out.to_base.f0 = b.left.f0;
  for (Arr r : base.representatives) out.to_base.f1.push_back(b.left.f1[r]);
  if (auto v = is_morita_1(base.groupoid, gamma.one(), out.to_base); !v) fail(ErrorKind::NotMorita, v.witness);
  out.j = j;
  return out;
}

std::optional<ExtensionIso> extension_iso_search(const GExtension& e, const GExtension& other) {
  if (!(e.G == other.G) || e.num_objects() != other.num_objects()) return std::nullopt;
  if (e.base.num_arrows() != other.base.num_arrows()) return std::nullopt;
  IsoSearchOptions options;
  options.object_map = identity_morphism(e.tilde).f0;
  for (Obj m = 0; m < e.num_objects(); ++m)
    for (Elem g = 0; g < e.G.order(); ++g) options.seeds.emplace_back(e.embed(m, g), other.embed(m, g));
  GroupoidMorphism induced;
  auto base_map = [&](const GroupoidMorphism& f) {
    GroupoidMorphism psi{*options.object_map, std::vector<Arr>(e.base.num_arrows(), kNone)};
    for (Arr x = 0; x < e.tilde.num_arrows(); ++x) {
      const Arr a = e.phi.f1[x];
      const Arr b = other.phi.f1[f.f1[x]];
      if (psi.f1[a] != kNone && psi.f1[a] != b) return std::optional<GroupoidMorphism>{};
      psi.f1[a] = b;
    }
    std::vector<Arr> sorted = psi.f1;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::optional<GroupoidMorphism>{};
    if (!is_morphism(e.base, other.base, psi)) return std::optional<GroupoidMorphism>{};
    return std::optional<GroupoidMorphism>{psi};
  };
  options.accept = [&](const GroupoidMorphism& f) { return base_map(f).has_value(); };
  auto found = groupoid_iso_search(e.tilde, other.tilde, options);
  if (!found) return std::nullopt;
  return ExtensionIso{*found, *base_map(*found)};
}

ExtensionIso roundtrip_check(const GExtension& e) {
  auto bundle = extension_to_bundle(e);
  auto back = bundle_to_extension(bundle.span, *bundle.target);
  auto iso = extension_iso_search(e, back.extension);
  if (!iso) fail(ErrorKind::NoIsoFound, "no isomorphism between the extension and its round trip");
  return *iso;
}

namespace {

struct CenterQuotient {
  Subgroup center;
  Quotient gz;
  QuotientGroupoid q;
  std::vector<Arr> phi;  // φ' on Γ̃/Z(G)
};

CenterQuotient center_quotient(const GExtension& e) {
  CenterQuotient out;
  const auto zs = center_elements(e.G);
  out.center = subgroup(e.G, zs);
  out.gz = quotient_group(e.G, zs);
  const auto& z = out.center.group;
  auto bundle = trivial_bundle(e.num_objects(), z);
  GroupoidMorphism jz;
  jz.f0 = identity_morphism(e.tilde).f0;
  for (Obj m = 0; m < e.num_objects(); ++m)
    for (Elem c = 0; c < z.order(); ++c) jz.f1.push_back(e.embed(m, out.center.inclusion(c)));
  out.q = quotient_by_bundle(e.tilde, bundle, jz);
  for (Arr r : out.q.representatives) out.phi.push_back(e.phi.f1[r]);
  return out;
}

bool commutes_with_kernel(const GExtension& e, Arr x) {
  const auto& t = e.tilde;
  for (Elem g = 0; g < e.G.order(); ++g)
    if (t.comp(x, e.embed(t.src(x), g)) != t.comp(e.embed(t.tgt(x), g), x)) return false;
  return true;
}

class SectionSearch {
 public:
  SectionSearch(const GExtension& e, const CenterQuotient& cq) : e_(e), cq_(cq) {
    const auto& quotient = cq.q.groupoid;
    candidates_.resize(e.base.num_arrows());
    for (Arr c = 0; c < quotient.num_arrows(); ++c) candidates_[cq.phi[c]].push_back(c);
    sigma_.assign(e.base.num_arrows(), kNone);
  }

  std::optional<GroupoidMorphism> run() { return extend(0); }

 private:
  bool consistent(Arr a) const {
    const auto& base = e_.base;
    const auto& quotient = cq_.q.groupoid;
    for (Arr b = 0; b <= a; ++b) {
      if (Arr ab = base.comp(a, b); ab != kNone && ab <= a && sigma_[ab] != quotient.comp(sigma_[a], sigma_[b])) {
        return false;
      }
      if (Arr ba = base.comp(b, a); ba != kNone && ba <= a && sigma_[ba] != quotient.comp(sigma_[b], sigma_[a])) {
        return false;
      }
    }
    return true;
  }

  std::optional<GroupoidMorphism> extend(Arr a) {
    if (a == e_.base.num_arrows()) {
      GroupoidMorphism sigma{identity_morphism(e_.base).f0, sigma_};
      if (!is_morphism(e_.base, cq_.q.groupoid, sigma)) return std::nullopt;
      std::vector<bool> in_image(cq_.q.groupoid.num_arrows(), false);
      for (Arr c : sigma_) in_image[c] = true;
      for (Arr x = 0; x < e_.tilde.num_arrows(); ++x)
        if (in_image[cq_.q.projection.f1[x]] && !commutes_with_kernel(e_, x)) return std::nullopt;
      return sigma;
    }
    for (Arr c : candidates_[a]) {
      sigma_[a] = c;
      if (!consistent(a)) continue;
      if (auto found = extend(a + 1)) return found;
    }
    sigma_[a] = kNone;
    return std::nullopt;
  }

  const GExtension& e_;
  const CenterQuotient& cq_;
  std::vector<std::vector<Arr>> candidates_;
  std::vector<Arr> sigma_;
};

}  // namespace

std::optional<CentralData> is_central(const GExtension& e) {
  auto cq = center_quotient(e);
  auto sigma = SectionSearch(e, cq).run();
  if (!sigma) return std::nullopt;
  const auto& quotient = cq.q.groupoid;
  CentralData cd;
  cd.sigma = *sigma;
  std::vector<bool> in_image(quotient.num_arrows(), false);
  for (Arr c : cd.sigma.f1) in_image[c] = true;
  std::vector<Arr> kept;
  for (Arr x = 0; x < e.tilde.num_arrows(); ++x)
    if (in_image[cq.q.projection.f1[x]]) kept.push_back(x);
  cd.tgprime = subgroupoid(e.tilde, kept);
  for (Arr x = 0; x < e.tilde.num_arrows(); ++x) {
    const Arr lift = quotient.comp(quotient.inv(cd.sigma.f1[e.phi.f1[x]]), cq.q.projection.f1[x]);
    const Elem g = e.kernel_element(cq.q.representatives[lift]);
    cd.r.push_back(cq.gz.projection(g));
  }
  cd.q = std::move(cq.q);
  cd.center = std::move(cq.center);
  cd.gz = std::move(cq.gz);
  return cd;
}

void validate_central_data(const GExtension& e, const CentralData& cd) {
  const auto& t = e.tilde;
  const auto& quotient = cd.q.groupoid;
  auto bad = [](const std::string& why) { fail(ErrorKind::InvalidCentralData, why); };
  if (!is_morphism(e.base, quotient, cd.sigma)) bad("σ is not a groupoid morphism");
  for (Arr a = 0; a < e.base.num_arrows(); ++a)
    if (e.phi.f1[cd.q.representatives[cd.sigma.f1[a]]] != a) bad("φ'∘σ ≠ id at base " + arr_str(a));
  for (Arr x : cd.tgprime.inclusion.f1)
    if (!commutes_with_kernel(e, x)) bad(arr_str(x) + " of q⁻¹(σ(Γ)) does not commute with i(G)");
  if (cd.r.size() != t.num_arrows()) bad("r has the wrong size");
  for (Arr x = 0; x < t.num_arrows(); ++x) {
    const Elem h = cd.gz.representatives[cd.r[x]];
    const Arr expect = quotient.comp(cd.sigma.f1[e.phi.f1[x]], cd.q.projection.f1[e.embed(t.src(x), h)]);
    if (cd.q.projection.f1[x] != expect) bad("q(γ) ≠ σ(φ(γ))·r(γ) at " + arr_str(x));
    for (Elem g = 0; g < e.G.order(); ++g) {
      const Elem conj = e.G.mul(e.G.mul(e.G.inv(h), g), h);
      if (t.comp(e.embed(t.tgt(x), g), x) != t.comp(x, e.embed(t.src(x), conj))) {
        bad("g·γ ≠ γ·g^{r(γ)} at " + arr_str(x));
      }
    }
  }
}

CentralReduction central_reduction(const GExtension& e, const CentralData& cd,
                                   std::shared_ptr<const AutTarget> target) {
  validate_central_data(e, cd);
  if (!target) target = make_aut_target(e.G);
  const auto& sub = cd.tgprime;
  const auto& z = cd.center.group;
  std::vector<Arr> local(e.tilde.num_arrows(), kNone);
  for (Arr k = 0; k < sub.inclusion.f1.size(); ++k) local[sub.inclusion.f1[k]] = k;
  GroupoidMorphism i, phi;
  i.f0 = sub.inclusion.f0;
  phi.f0 = sub.inclusion.f0;
  for (Obj m = 0; m < e.num_objects(); ++m)
    for (Elem c = 0; c < z.order(); ++c) {
      const Arr a = local[e.embed(m, cd.center.inclusion(c))];
      if (a == kNone) fail(ErrorKind::InvalidCentralData, "i(Z(G)) is not contained in q⁻¹(σ(Γ))");
      i.f1.push_back(a);
    }
  for (Arr x : sub.inclusion.f1) phi.f1.push_back(e.phi.f1[x]);

  CentralReduction out;
  out.extension = make_extension(z, sub.groupoid, e.base, std::move(i), std::move(phi));
  auto apex = extension_apex(out.extension);
  auto [base, left] = extension_left_leg(out.extension, apex);
  auto zt = cm_to_two_groupoid(abelian_crossed_module(z));
  TwoMorphism right;
  right.f0.assign(e.num_objects(), 0);
  right.f1.assign(out.extension.tilde.num_arrows(), 0);
  for (auto [g1, g2] : apex.cells) right.f2.push_back(zt.cell(cell_difference(out.extension, g1, g2), 0));
  out.span = make_span(base, apex.two, std::make_shared<const TwoGroupoid>(zt.two), std::move(left),
                       std::move(right));
  out.cells = std::move(apex.cells);

  out.inclusion.f0 = {0};
  out.inclusion.f1 = {0};
  for (Elem c = 0; c < z.order(); ++c) out.inclusion.f2.push_back(target->cm.cell(cd.center.inclusion(c), 0));
  validate_two_morphism(*out.span.target, *target->two, out.inclusion);
  out.target = std::move(target);
  return out;
}

Verdict is_morita_ext(const GExtension& e, const GExtension& other, std::span<const Obj> f,
                      const GroupoidMorphism& f_tilde, const GroupoidMorphism& f_base) {
  if (f.size() != e.num_objects()) return Verdict::failure("object map has the wrong size");
  if (!std::equal(f.begin(), f.end(), f_tilde.f0.begin(), f_tilde.f0.end()) ||
      !std::equal(f.begin(), f.end(), f_base.f0.begin(), f_base.f0.end())) {
    return Verdict::failure("the level maps disagree on objects");
  }
  std::vector<bool> hit(other.num_objects(), false);
  for (Obj o : f) {
    if (o >= other.num_objects()) return Verdict::failure("object image out of range");
    hit[o] = true;
  }
  for (Obj o = 0; o < other.num_objects(); ++o)
    if (!hit[o]) return Verdict::failure("object " + std::to_string(o) + " is not covered");
  if (!(e.G == other.G)) return Verdict::failure("the extensions have different groups");
  if (!is_morphism(e.tilde, other.tilde, f_tilde)) return Verdict::failure("Γ̃ → Δ̃ is not a morphism");
  if (!is_morphism(e.base, other.base, f_base)) return Verdict::failure("Γ → Δ is not a morphism");
  for (Arr x = 0; x < e.tilde.num_arrows(); ++x)
    if (other.phi.f1[f_tilde.f1[x]] != f_base.f1[e.phi.f1[x]]) return Verdict::failure("φ does not commute");
  for (Obj m = 0; m < e.num_objects(); ++m)
    for (Elem g = 0; g < e.G.order(); ++g)
      if (f_tilde.f1[e.embed(m, g)] != other.embed(f[m], g)) return Verdict::failure("i does not commute");
  if (auto v = is_morita_1(e.base, other.base, f_base); !v) return Verdict::failure("base square: " + v.witness);
  if (auto v = is_morita_1(e.tilde, other.tilde, f_tilde); !v) return Verdict::failure("Γ̃ square: " + v.witness);
  return Verdict::pass();
}

}  // namespace gerbekit
