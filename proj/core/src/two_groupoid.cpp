#include "gerbekit/two_groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "gerbekit/error.hpp"

namespace gerbekit {

namespace {

std::string cell_str(Cell c) { return "cell " + std::to_string(c); }

}  // namespace

TwoGroupoid TwoGroupoid::build(FiniteGroupoid one, std::vector<Arr> l, std::vector<Arr> u,
                               const FiniteGroupoid::ComposeFn& vcompose, const FiniteGroupoid::ComposeFn& hcompose,
                               Check check) {
  if (l.size() != u.size()) fail(ErrorKind::MalformedTable, "l/u length mismatch");
  for (Cell c = 0; c < l.size(); ++c) {
    if (l[c] >= one.num_arrows() || u[c] >= one.num_arrows()) {
      fail(ErrorKind::MalformedTable, cell_str(c) + " has a boundary out of range");
    }
    if (one.src(l[c]) != one.src(u[c]) || one.tgt(l[c]) != one.tgt(u[c])) {
      fail(ErrorKind::InvariantViolation, "s∘l = s∘u and t∘l = t∘u fail at " + cell_str(c));
    }
  }
  TwoGroupoid t;
  std::vector<Obj> hs, ht;
  for (Arr a : l) {
    hs.push_back(one.src(a));
    ht.push_back(one.tgt(a));
  }
  t.one_ = std::move(one);
  t.vert_ = FiniteGroupoid::build(t.one_.num_arrows(), std::move(l), std::move(u), vcompose, check);
  t.horiz_ = FiniteGroupoid::build(t.one_.num_objects(), std::move(hs), std::move(ht), hcompose, check);
  t.vert_.object_names = t.one_.arrow_names;
  for (Cell c = 0; c < t.num_cells(); ++c) t.vert_.arrow_names[c] = "c" + std::to_string(c);
  t.check_structure();
  if (check == Check::Full) t.check_interchange();
  return t;
}

void TwoGroupoid::check_structure() const {
  for (Obj o = 0; o < num_objects(); ++o) {
    if (horiz_.idn(o) != vid(one_.idn(o))) {
      fail(ErrorKind::InvariantViolation, "horizontal unit at object " + std::to_string(o) + " is not vid(1)");
    }
  }
  for (Cell a = 0; a < num_cells(); ++a) {
    for (Cell b : horiz_.arrows_into(s(a))) {
      const Cell c = hm(a, b);
      if (l(c) != one_.comp(l(a), l(b)) || u(c) != one_.comp(u(a), u(b))) {
        fail(ErrorKind::InvariantViolation,
             "l, u not multiplicative for (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
  for (Arr a = 0; a < num_arrows(); ++a) {
    for (Arr b : one_.arrows_into(one_.src(a))) {
      if (hm(vid(a), vid(b)) != vid(one_.comp(a, b))) {
        fail(ErrorKind::InvariantViolation,
             "vid(a)∘ₕvid(b) ≠ vid(ab) for (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
}

void TwoGroupoid::check_interchange() const {
  // (a∘ₕb)∘ᵥ(c∘ₕd) = (a∘ᵥc)∘ₕ(b∘ᵥd)
  for (Cell a = 0; a < num_cells(); ++a) {
    for (Cell c : vert_.arrows_into(l(a))) {
      const Cell ac = vm(a, c);
      for (Cell b : horiz_.arrows_into(s(a))) {
        const Cell ab = hm(a, b);
        for (Cell d : vert_.arrows_into(l(b))) {
          const Cell cd = hm(c, d);
          if (vm(ab, cd) != hm(ac, vm(b, d))) {
            fail(ErrorKind::InvariantViolation, "interchange fails at (" + std::to_string(a) + "," +
                                                    std::to_string(b) + "," + std::to_string(c) + "," +
                                                    std::to_string(d) + ")");
          }
        }
      }
    }
  }
}

void TwoGroupoid::check_axioms() const {
  one_.check_axioms();
  vert_.check_axioms();
  horiz_.check_axioms();
  check_structure();
  check_interchange();
}

void validate_two_morphism(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f) {
  if (f.f0.size() != dom.num_objects() || f.f1.size() != dom.num_arrows() || f.f2.size() != dom.num_cells()) {
    fail(ErrorKind::NotAMorphism, "level maps do not match the domain");
  }
  validate_morphism(dom.one(), cod.one(), {f.f0, f.f1});
  validate_morphism(dom.vert(), cod.vert(), {f.f1, f.f2});
  validate_morphism(dom.horiz(), cod.horiz(), {f.f0, f.f2});
}

bool is_two_morphism(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f) {
  try {
    validate_two_morphism(dom, cod, f);
    return true;
  } catch (const Error&) {
    return false;
  }
}

TwoMorphism identity_two_morphism(const TwoGroupoid& g) {
  TwoMorphism f;
  f.f0.resize(g.num_objects());
  f.f1.resize(g.num_arrows());
  f.f2.resize(g.num_cells());
  std::iota(f.f0.begin(), f.f0.end(), 0);
  std::iota(f.f1.begin(), f.f1.end(), 0);
  std::iota(f.f2.begin(), f.f2.end(), 0);
  return f;
}

TwoMorphism compose(const TwoMorphism& outer, const TwoMorphism& inner) {
  TwoMorphism f;
  for (Obj o : inner.f0) f.f0.push_back(outer.f0[o]);
  for (Arr a : inner.f1) f.f1.push_back(outer.f1[a]);
  for (Cell c : inner.f2) f.f2.push_back(outer.f2[c]);
  return f;
}

TwoGroupoid as_two_groupoid(const FiniteGroupoid& g) {
  std::vector<Arr> ids(g.num_arrows());
  std::iota(ids.begin(), ids.end(), 0);
  auto t = TwoGroupoid::build(
      g, ids, ids, [](Cell a, Cell) { return a; }, [&](Cell a, Cell b) { return g.comp(a, b); },
      TwoGroupoid::Check::Structure);
  t.cell_names() = g.arrow_names;
  return t;
}

TwoGroupoid point_two_groupoid() { return as_two_groupoid(point_groupoid()); }

void CrossedModuleGpd::validate() const {
  if (X.num_objects() != gamma.num_objects()) fail(ErrorKind::NotAMorphism, "X and Γ have different bases");
  for (Arr x = 0; x < X.num_arrows(); ++x)
    if (!X.is_loop(x)) fail(ErrorKind::NotAMorphism, "X is not a bundle of groups at arrow " + std::to_string(x));
  validate_morphism(X, gamma, rho);
  for (Obj o = 0; o < X.num_objects(); ++o)
    if (rho.f0[o] != o) fail(ErrorKind::NotAMorphism, "ρ is not the identity on objects");
  if (action.size() != X.num_arrows() * gamma.num_arrows()) fail(ErrorKind::MalformedTable, "action table size");

  auto witness = [](Arr x, Arr g) { return "(" + std::to_string(x) + "," + std::to_string(g) + ")"; };
  for (Arr x = 0; x < X.num_arrows(); ++x) {
    const Obj base = X.src(x);
    for (Arr g : gamma.arrows_into(base)) {
      const Arr y = act(x, g);
      if (y >= X.num_arrows() || X.src(y) != gamma.src(g)) {
        fail(ErrorKind::NotAHomomorphism, "x^γ undefined or misplaced at " + witness(x, g));
      }
      for (Arr x2 : X.hom(base, base)) {
        if (act(X.comp(x, x2), g) != X.comp(y, act(x2, g))) {
          fail(ErrorKind::NotAHomomorphism, "(xy)^γ ≠ x^γ y^γ at " + witness(x, g));
        }
      }
      for (Arr h : gamma.arrows_into(gamma.src(g))) {
        if (act(x, gamma.comp(g, h)) != act(y, h)) {
          fail(ErrorKind::NotAHomomorphism, "x^{γδ} ≠ (x^γ)^δ at " + witness(x, g));
        }
      }
      if (rho.f1[y] != gamma.comp(gamma.comp(gamma.inv(g), rho.f1[x]), g)) {
        fail(ErrorKind::InvariantViolation, "ρ(x^γ) ≠ γ⁻¹ρ(x)γ at " + witness(x, g));
      }
    }
    if (act(x, gamma.idn(base)) != x) fail(ErrorKind::NotAHomomorphism, "x^1 ≠ x at arrow " + std::to_string(x));
    for (Arr y : X.hom(base, base)) {
      if (act(x, rho.f1[y]) != X.comp(X.comp(X.inv(y), x), y)) {
        fail(ErrorKind::InvariantViolation, "x^{ρ(y)} ≠ y⁻¹xy at " + witness(x, y));
      }
    }
  }
}

CrossedModuleGpd group_crossed_module(const FiniteGroup& g, const FiniteGroup& h, const GroupHom& rho,
                                      const RightAction& action) {
  CrossedModuleGpd cm;
  cm.X = group_as_groupoid(g);
  cm.gamma = group_as_groupoid(h);
  cm.rho.f0 = {0};
  cm.rho.f1 = rho.map;
  cm.action.resize(g.order() * h.order());
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem k = 0; k < h.order(); ++k) cm.action[x * h.order() + k] = action(x, k);
  cm.validate();
  return cm;
}

CrossedModuleGpd aut_crossed_module(const FiniteGroup& g, const Automorphisms& aut) {
  return group_crossed_module(g, aut.group, inner_hom(g, aut), aut.action);
}

CrossedModuleGpd abelian_crossed_module(const FiniteGroup& a) {
  RightAction trivial{1, {}};
  for (Elem x = 0; x < a.order(); ++x) trivial.table.push_back(x);
  return group_crossed_module(a, trivial_group(), GroupHom{std::vector<Elem>(a.order(), 0)}, trivial);
}

CrossedModuleGpd loops_crossed_module(const FiniteGroupoid& g) {
  std::vector<Arr> loops;
  for (Arr a = 0; a < g.num_arrows(); ++a)
    if (g.is_loop(a)) loops.push_back(a);
  auto sub = subgroupoid(g, loops);
  std::vector<Arr> local(g.num_arrows(), kNone);
  for (Arr i = 0; i < loops.size(); ++i) local[loops[i]] = i;
  CrossedModuleGpd cm;
  cm.X = sub.groupoid;
  cm.gamma = g;
  cm.rho = sub.inclusion;
  cm.action.assign(loops.size() * g.num_arrows(), kNone);
  for (Arr x = 0; x < loops.size(); ++x)
    for (Arr h : g.arrows_into(g.src(loops[x])))
      cm.action[x * g.num_arrows() + h] = local[g.comp(g.comp(g.inv(h), loops[x]), h)];
  cm.validate();
  return cm;
}

Cell CmTwoGroupoid::cell(Arr x, Arr g) const { return static_cast<Cell>(offset_[g] + xpos_[x]); }

CmTwoGroupoid cm_to_two_groupoid(const CrossedModuleGpd& cm) {
  const auto& X = cm.X;
  const auto& G = cm.gamma;
  CmTwoGroupoid out;
  out.xpos_.resize(X.num_arrows());
  for (Obj o = 0; o < X.num_objects(); ++o) {
    const auto fiber = X.hom(o, o);
    for (std::uint32_t k = 0; k < fiber.size(); ++k) out.xpos_[fiber[k]] = k;
  }
  std::vector<Arr> l, u;
  for (Arr g = 0; g < G.num_arrows(); ++g) {
    out.offset_.push_back(out.cells.size());
    for (Arr x : X.hom(G.tgt(g), G.tgt(g))) {
      out.cells.emplace_back(x, g);
      l.push_back(g);
      u.push_back(G.comp(cm.rho.f1[x], g));
    }
  }
  const auto& cells = out.cells;
  out.two = TwoGroupoid::build(
      G, l, u,
      [&](Cell b, Cell a) { return out.cell(X.comp(cells[b].first, cells[a].first), cells[a].second); },
      [&](Cell a, Cell b) {
        const auto [x2, g2] = cells[a];
        const auto [x1, g1] = cells[b];
        return out.cell(X.comp(x2, cm.act(x1, G.inv(g2))), G.comp(g2, g1));
      });
  for (Cell c = 0; c < cells.size(); ++c) {
    out.two.cell_names()[c] = "(" + X.arrow_names[cells[c].first] + "," + G.arrow_names[cells[c].second] + ")";
  }
  return out;
}

TwoGroupoidCm two_groupoid_to_cm(const TwoGroupoid& t) {
  const auto& one = t.one();
  TwoGroupoidCm out;
  std::vector<Arr> local(t.num_cells(), kNone);
  for (Cell c = 0; c < t.num_cells(); ++c) {
    if (one.is_identity(t.l(c))) {
      local[c] = static_cast<Arr>(out.cells.size());
      out.cells.push_back(c);
    }
  }
  std::vector<Obj> base;
  for (Cell c : out.cells) base.push_back(t.s(c));
  auto& cm = out.cm;
  cm.X = FiniteGroupoid::build(t.num_objects(), base, base,
                               [&](Arr a, Arr b) { return local[t.hm(out.cells[a], out.cells[b])]; });
  for (Arr x = 0; x < out.cells.size(); ++x) cm.X.arrow_names[x] = t.cell_names()[out.cells[x]];
  cm.X.object_names = one.object_names;
  cm.gamma = one;
  cm.rho.f0.resize(t.num_objects());
  std::iota(cm.rho.f0.begin(), cm.rho.f0.end(), 0);
  for (Cell c : out.cells) cm.rho.f1.push_back(t.u(c));
  cm.action.assign(out.cells.size() * one.num_arrows(), kNone);
  for (Arr x = 0; x < out.cells.size(); ++x) {
    for (Arr h : one.arrows_into(base[x])) {
      const Cell conj = t.whisker_right(t.whisker_left(one.inv(h), out.cells[x]), h);
      cm.action[x * one.num_arrows() + h] = local[conj];
    }
  }
  cm.validate();
  return out;
}

Verdict check_two_groupoid_roundtrip(const TwoGroupoid& t) {
  const auto cm = two_groupoid_to_cm(t);
  const auto back = cm_to_two_groupoid(cm.cm);
  std::vector<Arr> local(t.num_cells(), kNone);
  for (Arr x = 0; x < cm.cells.size(); ++x) local[cm.cells[x]] = x;
  TwoMorphism iso = identity_two_morphism(t);
  for (Cell a = 0; a < t.num_cells(); ++a) {
    const Arr lower = t.l(a);
    const Cell x = t.whisker_right(a, t.one().inv(lower));
    if (local[x] == kNone) return Verdict::failure("α∘ₕvid(l(α)⁻¹) is not in X for " + cell_str(a));
    iso.f2[a] = back.cell(local[x], lower);
  }
  if (back.two.num_cells() != t.num_cells()) return Verdict::failure("cell counts differ after the round trip");
  std::vector<Cell> sorted = iso.f2;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return Verdict::failure("canonical map on cells is not injective");
  }
  try {
    validate_two_morphism(t, back.two, iso);
  } catch (const Error& e) {
    return Verdict::failure(e.what());
  }
  return Verdict::pass();
}

Verdict check_crossed_module_roundtrip(const CrossedModuleGpd& cm) {
  const auto two = cm_to_two_groupoid(cm);
  const auto back = two_groupoid_to_cm(two.two);
  if (!(back.cm.gamma == cm.gamma)) return Verdict::failure("Γ changed in the round trip");
  if (back.cm.X.num_arrows() != cm.X.num_arrows()) return Verdict::failure("|X| changed in the round trip");
  std::vector<Arr> local(two.two.num_cells(), kNone);
  for (Arr x = 0; x < back.cells.size(); ++x) local[back.cells[x]] = x;
  GroupoidMorphism iso = identity_morphism(cm.X);
  for (Arr x = 0; x < cm.X.num_arrows(); ++x) {
    iso.f1[x] = local[two.cell(x, cm.gamma.idn(cm.X.src(x)))];
    if (iso.f1[x] == kNone) return Verdict::failure("(x,1) is not in X for arrow " + std::to_string(x));
  }
  if (!is_morphism(cm.X, back.cm.X, iso)) return Verdict::failure("x ↦ (x,1) is not a groupoid morphism");
  for (Arr x = 0; x < cm.X.num_arrows(); ++x) {
    if (back.cm.rho.f1[iso.f1[x]] != cm.rho.f1[x]) return Verdict::failure("ρ differs at " + std::to_string(x));
    for (Arr g : cm.gamma.arrows_into(cm.X.src(x))) {
      if (back.cm.act(iso.f1[x], g) != iso.f1[cm.act(x, g)]) {
        return Verdict::failure("action differs at (" + std::to_string(x) + "," + std::to_string(g) + ")");
      }
    }
  }
  return Verdict::pass();
}

PulledBackTwoGroupoid pullback_two_groupoid(const TwoGroupoid& delta, std::span<const Obj> f) {
  auto level1 = pullback_groupoid(delta.one(), f);
  PulledBackTwoGroupoid out;
  out.arrows = level1.triples;
  const auto m = static_cast<std::uint32_t>(f.size());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (Cell c : delta.horiz().hom(f[a], f[b])) out.cells.push_back({a, c, b});
  std::sort(out.cells.begin(), out.cells.end());
  auto find = [](const std::vector<std::array<std::uint32_t, 3>>& v, std::array<std::uint32_t, 3> key) {
    return static_cast<std::uint32_t>(std::lower_bound(v.begin(), v.end(), key) - v.begin());
  };
  std::vector<Arr> l, u;
  for (const auto& [a, c, b] : out.cells) {
    l.push_back(find(out.arrows, {a, delta.l(c), b}));
    u.push_back(find(out.arrows, {a, delta.u(c), b}));
  }
  const auto& cells = out.cells;
  out.two = TwoGroupoid::build(
      level1.groupoid, l, u,
      [&](Cell y, Cell x) { return find(cells, {cells[x][0], delta.vm(cells[y][1], cells[x][1]), cells[x][2]}); },
      [&](Cell y, Cell x) { return find(cells, {cells[x][0], delta.hm(cells[y][1], cells[x][1]), cells[y][2]}); },
      TwoGroupoid::Check::Structure);
  out.projection.f0 = level1.projection.f0;
  out.projection.f1 = level1.projection.f1;
  for (const auto& c : out.cells) out.projection.f2.push_back(c[1]);
  return out;
}

Verdict is_morita_2(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f) {
  try {
    validate_two_morphism(dom, cod, f);
  } catch (const Error& e) {
    return Verdict::failure(std::string("not a 2-groupoid morphism: ") + e.what());
  }
  std::vector<bool> hit(cod.num_objects(), false);
  for (Obj o : f.f0) hit[o] = true;
  for (Obj o = 0; o < cod.num_objects(); ++o)
    if (!hit[o]) return Verdict::failure("object " + std::to_string(o) + " is not in the image of f₀");
  const auto& one = dom.one();
  for (Obj m = 0; m < dom.num_objects(); ++m) {
    for (Obj n = 0; n < dom.num_objects(); ++n) {
      const auto arrows = one.hom(m, n);
      std::vector<bool> covered(cod.num_arrows(), false);
      for (Arr a : arrows) covered[f.f1[a]] = true;
      for (Arr b : cod.one().hom(f.f0[m], f.f0[n])) {
        if (!covered[b]) {
          return Verdict::failure("1-arrow " + std::to_string(b) + " over (" + std::to_string(m) + "," +
                                  std::to_string(n) + ") is not in the image of f₁");
        }
      }
      for (Arr a : arrows) {
        for (Arr b : arrows) {
          const auto source = dom.vert().hom(a, b);
          const auto target = cod.vert().hom(f.f1[a], f.f1[b]);
          std::vector<Cell> image;
          for (Cell c : source) image.push_back(f.f2[c]);
          std::sort(image.begin(), image.end());
          if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
            return Verdict::failure("f₂ not injective on 2-cells " + std::to_string(a) + " ⇒ " + std::to_string(b));
          }
          if (image.size() != target.size()) {
            return Verdict::failure("f₂ not surjective onto 2-cells " + std::to_string(f.f1[a]) + " ⇒ " +
                                    std::to_string(f.f1[b]) + " over 1-arrows " + std::to_string(a) + ", " +
                                    std::to_string(b));
          }
        }
      }
    }
  }
  return Verdict::pass();
}

namespace {

template <class T>
class PairIndex {
 public:
  explicit PairIndex(std::size_t stride) : stride_(stride) {}
  void add(T a, T b) {
    index_.emplace(key(a, b), static_cast<T>(pairs.size()));
    pairs.emplace_back(a, b);
  }
  T operator()(T a, T b) const {
    auto it = index_.find(key(a, b));
    return it == index_.end() ? kNone : it->second;
  }
  std::vector<std::pair<T, T>> pairs;

 private:
  std::uint64_t key(T a, T b) const { return std::uint64_t{a} * stride_ + b; }
  std::size_t stride_;
  std::unordered_map<std::uint64_t, T> index_;
};

}  // namespace

FiberProduct fiber_product(const TwoGroupoid& a, const TwoGroupoid& b, const TwoGroupoid& c, const TwoMorphism& f,
                           const TwoMorphism& g) {
  validate_two_morphism(a, c, f);
  validate_two_morphism(b, c, g);
  PairIndex<Obj> objs(b.num_objects());
  PairIndex<Arr> arrs(b.num_arrows());
  PairIndex<Cell> cells(b.num_cells());
  for (Obj x = 0; x < a.num_objects(); ++x)
    for (Obj y = 0; y < b.num_objects(); ++y)
      if (f.f0[x] == g.f0[y]) objs.add(x, y);
  for (Arr x = 0; x < a.num_arrows(); ++x)
    for (Arr y = 0; y < b.num_arrows(); ++y)
      if (f.f1[x] == g.f1[y]) arrs.add(x, y);
  for (Cell x = 0; x < a.num_cells(); ++x)
    for (Cell y = 0; y < b.num_cells(); ++y)
      if (f.f2[x] == g.f2[y]) cells.add(x, y);

  std::vector<Obj> src, tgt;
  for (auto [x, y] : arrs.pairs) {
    src.push_back(objs(a.one().src(x), b.one().src(y)));
    tgt.push_back(objs(a.one().tgt(x), b.one().tgt(y)));
  }
  auto one = FiniteGroupoid::build(
      objs.pairs.size(), src, tgt,
      [&](Arr p, Arr q) {
        return arrs(a.one().comp(arrs.pairs[p].first, arrs.pairs[q].first),
                    b.one().comp(arrs.pairs[p].second, arrs.pairs[q].second));
      },
      FiniteGroupoid::Check::Structure);
  std::vector<Arr> l, u;
  for (auto [x, y] : cells.pairs) {
    l.push_back(arrs(a.l(x), b.l(y)));
    u.push_back(arrs(a.u(x), b.u(y)));
  }
  FiberProduct out;
  out.two = TwoGroupoid::build(
      std::move(one), l, u,
      [&](Cell p, Cell q) {
        return cells(a.vm(cells.pairs[p].first, cells.pairs[q].first),
                     b.vm(cells.pairs[p].second, cells.pairs[q].second));
      },
      [&](Cell p, Cell q) {
        return cells(a.hm(cells.pairs[p].first, cells.pairs[q].first),
                     b.hm(cells.pairs[p].second, cells.pairs[q].second));
      },
      TwoGroupoid::Check::Structure);
  out.objects = objs.pairs;
  out.arrows = arrs.pairs;
  out.cells = cells.pairs;
  for (auto [x, y] : out.objects) {
    out.first.f0.push_back(x);
    out.second.f0.push_back(y);
  }
  for (auto [x, y] : out.arrows) {
    out.first.f1.push_back(x);
    out.second.f1.push_back(y);
  }
  for (auto [x, y] : out.cells) {
    out.first.f2.push_back(x);
    out.second.f2.push_back(y);
  }
  return out;
}

FiberProduct product(const TwoGroupoid& a, const TwoGroupoid& b) {
  const auto point = point_two_groupoid();
  auto constant = [](const TwoGroupoid& g) {
    return TwoMorphism{std::vector<Obj>(g.num_objects(), 0), std::vector<Arr>(g.num_arrows(), 0),
                       std::vector<Cell>(g.num_cells(), 0)};
  };
  return fiber_product(a, b, point, constant(a), constant(b));
}

Verdict check_nat2(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f, const TwoMorphism& g,
                   const Nat2& w) {
  const auto& one = cod.one();
  if (w.phi.size() != dom.num_objects() || w.psi.size() != dom.num_arrows()) {
    return Verdict::failure("witness has the wrong shape");
  }
  for (Obj m = 0; m < dom.num_objects(); ++m) {
    if (w.phi[m] >= cod.num_arrows() || one.src(w.phi[m]) != f.f0[m] || one.tgt(w.phi[m]) != g.f0[m]) {
      return Verdict::failure("φ(" + std::to_string(m) + ") is not an arrow f(m) → g(m)");
    }
  }
  const auto& d1 = dom.one();
  for (Arr i = 0; i < dom.num_arrows(); ++i) {
    const Cell c = w.psi[i];
    if (c >= cod.num_cells() || cod.l(c) != one.comp(w.phi[d1.tgt(i)], f.f1[i]) ||
        cod.u(c) != one.comp(g.f1[i], w.phi[d1.src(i)])) {
      return Verdict::failure("ψ(" + std::to_string(i) + ") has the wrong boundary");
    }
  }
  for (Cell x = 0; x < dom.num_cells(); ++x) {
    const Cell lhs = cod.vm(cod.whisker_right(g.f2[x], w.phi[dom.s(x)]), w.psi[dom.l(x)]);
    const Cell rhs = cod.vm(w.psi[dom.u(x)], cod.whisker_left(w.phi[dom.t(x)], f.f2[x]));
    if (lhs != rhs) return Verdict::failure("2-cell naturality fails at " + cell_str(x));
  }
  for (Arr j = 0; j < dom.num_arrows(); ++j) {
    for (Arr i : d1.arrows_into(d1.src(j))) {
      const Cell expect = cod.vm(cod.whisker_left(g.f1[j], w.psi[i]), cod.whisker_right(w.psi[j], f.f1[i]));
      if (w.psi[d1.comp(j, i)] != expect) {
        return Verdict::failure("ψ not multiplicative at (" + std::to_string(j) + "," + std::to_string(i) + ")");
      }
    }
  }
  return Verdict::pass();
}

Nat2 reverse_nat2(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism&, const TwoMorphism&,
                  const Nat2& w) {
  const auto& one = cod.one();
  Nat2 out;
  for (Arr a : w.phi) out.phi.push_back(one.inv(a));
  for (Arr i = 0; i < dom.num_arrows(); ++i) {
    const Cell flipped = cod.vinv(w.psi[i]);
    out.psi.push_back(cod.whisker_right(cod.whisker_left(out.phi[dom.one().tgt(i)], flipped),
                                        out.phi[dom.one().src(i)]));
  }
  return out;
}

namespace {

class Nat2Search {
 public:
  Nat2Search(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f, const TwoMorphism& g,
             std::size_t budget)
      : dom_(dom), cod_(cod), f_(f), g_(g), budget_(budget) {}

  std::optional<Nat2> run() {
    phi_.assign(dom_.num_objects(), kNone);
    return choose_phi(0);
  }

 private:
  struct State {
    std::vector<Cell> psi;
    std::vector<Arr> assigned;
  };

  void tick() {
    if (++visits_ > budget_) {
      fail(ErrorKind::BudgetExceeded, "2-transformation search exceeded " + std::to_string(budget_) + " nodes");
    }
  }

  std::optional<Nat2> choose_phi(Obj m) {
    if (m == dom_.num_objects()) {
      State s;
      s.psi.assign(dom_.num_arrows(), kNone);
      for (Obj o = 0; o < dom_.num_objects(); ++o)
        if (!assign(s, dom_.one().idn(o), cod_.vid(phi_[o]))) return std::nullopt;
      return choose_psi(s);
    }
    const auto& one = cod_.one();
    std::vector<Arr> cands(one.hom(f_.f0[m], g_.f0[m]).begin(), one.hom(f_.f0[m], g_.f0[m]).end());
    std::stable_partition(cands.begin(), cands.end(), [&](Arr a) { return one.is_identity(a); });
    for (Arr a : cands) {
      tick();
      phi_[m] = a;
      if (auto found = choose_phi(m + 1)) return found;
    }
    phi_[m] = kNone;
    return std::nullopt;
  }

  Arr lower(Arr i) const { return cod_.one().comp(phi_[dom_.one().tgt(i)], f_.f1[i]); }
  Arr upper(Arr i) const { return cod_.one().comp(g_.f1[i], phi_[dom_.one().src(i)]); }

  std::optional<Nat2> choose_psi(State& s) {
    Arr best = kNone;
    std::size_t best_size = 0;
    for (Arr i = 0; i < dom_.num_arrows(); ++i) {
      if (s.psi[i] != kNone) continue;
      const std::size_t k = cod_.vert().hom(lower(i), upper(i)).size();
      if (k == 0) return std::nullopt;
      if (best == kNone || k < best_size) {
        best = i;
        best_size = k;
      }
    }
    if (best == kNone) {
      Nat2 w{phi_, s.psi};
      if (check_nat2(dom_, cod_, f_, g_, w)) return w;
      return std::nullopt;
    }
    std::vector<Cell> cands(cod_.vert().hom(lower(best), upper(best)).begin(),
                            cod_.vert().hom(lower(best), upper(best)).end());
    std::stable_partition(cands.begin(), cands.end(), [&](Cell c) { return cod_.vert().is_identity(c); });
    for (Cell c : cands) {
      tick();
      State next = s;
      if (!assign(next, best, c)) continue;
      if (auto found = choose_psi(next)) return found;
    }
    return std::nullopt;
  }

  // Sets ψ(i) = c and everything forced by multiplicativity and naturality.
  bool assign(State& s, Arr i, Cell c) const {
    const auto& d1 = dom_.one();
    const auto& dv = dom_.vert();
    std::vector<std::pair<Arr, Cell>> work{{i, c}};
    while (!work.empty()) {
      auto [a, x] = work.back();
      work.pop_back();
      if (x == kNone) return false;
      if (s.psi[a] != kNone) {
        if (s.psi[a] != x) return false;
        continue;
      }
      if (cod_.l(x) != lower(a) || cod_.u(x) != upper(a)) return false;
      s.psi[a] = x;
      s.assigned.push_back(a);
      for (Arr k : s.assigned) {
        const Cell y = s.psi[k];
        if (Arr ak = d1.comp(a, k); ak != kNone) {
          work.emplace_back(ak, cod_.vm(cod_.whisker_left(g_.f1[a], y), cod_.whisker_right(x, f_.f1[k])));
        }
        if (Arr ka = d1.comp(k, a); ka != kNone) {
          work.emplace_back(ka, cod_.vm(cod_.whisker_left(g_.f1[k], x), cod_.whisker_right(y, f_.f1[a])));
        }
      }
      for (Cell z : dv.arrows_from(a)) {
        const Cell top = cod_.whisker_right(g_.f2[z], phi_[dom_.s(z)]);
        const Cell bottom = cod_.whisker_left(phi_[dom_.t(z)], f_.f2[z]);
        work.emplace_back(dom_.u(z), cod_.vm(cod_.vm(top, x), cod_.vinv(bottom)));
      }
      for (Cell z : dv.arrows_into(a)) {
        const Cell top = cod_.whisker_right(g_.f2[z], phi_[dom_.s(z)]);
        const Cell bottom = cod_.whisker_left(phi_[dom_.t(z)], f_.f2[z]);
        work.emplace_back(dom_.l(z), cod_.vm(cod_.vm(cod_.vinv(top), x), bottom));
      }
    }
    return true;
  }

  const TwoGroupoid& dom_;
  const TwoGroupoid& cod_;
  const TwoMorphism& f_;
  const TwoMorphism& g_;
  std::size_t budget_;
  std::size_t visits_ = 0;
  std::vector<Arr> phi_;
};

}  // namespace

std::optional<Nat2> nat2_search(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f,
                                const TwoMorphism& g, std::size_t budget) {
  validate_two_morphism(dom, cod, f);
  validate_two_morphism(dom, cod, g);
  return Nat2Search(dom, cod, f, g, budget).run();
}

}  // namespace gerbekit
