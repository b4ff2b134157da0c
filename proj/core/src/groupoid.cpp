#include "gerbekit/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "gerbekit/error.hpp"

namespace gerbekit {

namespace {

std::string arr_str(Arr a) { return "arrow " + std::to_string(a); }

}  // namespace

FiniteGroupoid FiniteGroupoid::build(std::size_t num_objects, std::vector<Obj> src, std::vector<Obj> tgt,
                                     const ComposeFn& compose, Check check) {
  if (src.size() != tgt.size()) fail(ErrorKind::MalformedTable, "src/tgt length mismatch");
  FiniteGroupoid g;
  g.num_objects_ = num_objects;
  g.src_ = std::move(src);
  g.tgt_ = std::move(tgt);
  for (Arr a = 0; a < g.num_arrows(); ++a) {
    if (g.src_[a] >= num_objects || g.tgt_[a] >= num_objects) {
      fail(ErrorKind::MalformedTable, arr_str(a) + " has an endpoint out of range");
    }
  }
  g.index();
  for (Arr a = 0; a < g.num_arrows(); ++a) {
    for (Arr b : g.arrows_into(g.src_[a])) {
      const Arr c = compose(a, b);
      if (c >= g.num_arrows() || g.src_[c] != g.src_[b] || g.tgt_[c] != g.tgt_[a]) {
        fail(ErrorKind::NotClosed, "composite of " + std::to_string(a) + " and " + std::to_string(b));
      }
      g.table_[g.row_[a] + g.tpos_[b]] = c;
    }
  }
  g.locate_units_and_inverses();
  if (check == Check::Full) g.check_axioms();
  g.object_names.resize(num_objects);
  for (Obj o = 0; o < num_objects; ++o) g.object_names[o] = "o" + std::to_string(o);
  g.arrow_names.resize(g.num_arrows());
  for (Arr a = 0; a < g.num_arrows(); ++a) g.arrow_names[a] = "a" + std::to_string(a);
  return g;
}

void FiniteGroupoid::index() {
  const std::size_t n = num_arrows();
  auto group_by = [&](const std::vector<Obj>& key, std::vector<Arr>& order, std::vector<std::size_t>& offset) {
    offset.assign(num_objects_ + 1, 0);
    for (Arr a = 0; a < n; ++a) ++offset[key[a] + 1];
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    order.assign(n, 0);
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (Arr a = 0; a < n; ++a) order[fill[key[a]]++] = a;
  };
  group_by(tgt_, by_tgt_, tgt_offset_);
  group_by(src_, by_src_, src_offset_);
  tpos_.assign(n, 0);
  for (Obj o = 0; o < num_objects_; ++o)
    for (std::size_t k = tgt_offset_[o]; k < tgt_offset_[o + 1]; ++k)
      tpos_[by_tgt_[k]] = static_cast<std::uint32_t>(k - tgt_offset_[o]);
  row_.assign(n, 0);
  std::size_t total = 0;
  for (Arr a = 0; a < n; ++a) {
    row_[a] = total;
    total += tgt_offset_[src_[a] + 1] - tgt_offset_[src_[a]];
  }
  table_.assign(total, kNone);
  by_src_tgt_.resize(n);
  std::iota(by_src_tgt_.begin(), by_src_tgt_.end(), 0);
  std::sort(by_src_tgt_.begin(), by_src_tgt_.end(), [&](Arr a, Arr b) {
    return std::tie(src_[a], tgt_[a], a) < std::tie(src_[b], tgt_[b], b);
  });
}

void FiniteGroupoid::locate_units_and_inverses() {
  idn_.assign(num_objects_, kNone);
  for (Obj o = 0; o < num_objects_; ++o) {
    for (Arr e : hom(o, o)) {
      bool unit = true;
      for (Arr b : arrows_into(o)) unit = unit && comp(e, b) == b;
      for (Arr a : arrows_from(o)) unit = unit && comp(a, e) == a;
      if (unit) {
        idn_[o] = e;
        break;
      }
    }
    if (idn_[o] == kNone) fail(ErrorKind::NoUnit, "object " + std::to_string(o));
  }
  inv_.assign(num_arrows(), kNone);
  for (Arr a = 0; a < num_arrows(); ++a) {
    for (Arr b : hom(tgt_[a], src_[a])) {
      if (comp(a, b) == idn_[tgt_[a]] && comp(b, a) == idn_[src_[a]]) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] == kNone) fail(ErrorKind::NoInverse, arr_str(a));
  }
}

std::span<const Arr> FiniteGroupoid::hom(Obj s, Obj t) const {
  auto lo = std::lower_bound(by_src_tgt_.begin(), by_src_tgt_.end(), std::pair{s, t}, [&](Arr a, std::pair<Obj, Obj> key) {
    return std::pair{src_[a], tgt_[a]} < key;
  });
  auto hi = lo;
  while (hi != by_src_tgt_.end() && src_[*hi] == s && tgt_[*hi] == t) ++hi;
  return {lo, hi};
}

std::span<const Arr> FiniteGroupoid::arrows_into(Obj t) const {
  return {by_tgt_.data() + tgt_offset_[t], by_tgt_.data() + tgt_offset_[t + 1]};
}

std::span<const Arr> FiniteGroupoid::arrows_from(Obj s) const {
  return {by_src_.data() + src_offset_[s], by_src_.data() + src_offset_[s + 1]};
}

void FiniteGroupoid::check_axioms() const {
  for (Arr a = 0; a < num_arrows(); ++a) {
    for (Arr b : arrows_into(src_[a])) {
      const Arr ab = comp(a, b);
      if (src_[ab] != src_[b] || tgt_[ab] != tgt_[a]) fail(ErrorKind::NotClosed, "composite endpoints");
      for (Arr c : arrows_into(src_[b])) {
        if (comp(ab, c) != comp(a, comp(b, c))) {
          fail(ErrorKind::NotAssociative,
               "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
    }
    if (comp(idn_[tgt_[a]], a) != a || comp(a, idn_[src_[a]]) != a) fail(ErrorKind::NoUnit, arr_str(a));
    if (comp(a, inv_[a]) != idn_[tgt_[a]] || comp(inv_[a], a) != idn_[src_[a]]) {
      fail(ErrorKind::NoInverse, arr_str(a));
    }
  }
}

void validate_morphism(const FiniteGroupoid& dom, const FiniteGroupoid& cod, const GroupoidMorphism& f) {
  if (f.f0.size() != dom.num_objects() || f.f1.size() != dom.num_arrows()) {
    fail(ErrorKind::NotAMorphism, "map sizes do not match the domain");
  }
  for (Obj o : f.f0)
    if (o >= cod.num_objects()) fail(ErrorKind::NotAMorphism, "object image out of range");
  for (Arr a : f.f1)
    if (a >= cod.num_arrows()) fail(ErrorKind::NotAMorphism, "arrow image out of range");
  for (Obj o = 0; o < dom.num_objects(); ++o)
    if (f.f1[dom.idn(o)] != cod.idn(f.f0[o])) fail(ErrorKind::NotAMorphism, "identity of object " + std::to_string(o));
  for (Arr a = 0; a < dom.num_arrows(); ++a) {
    if (cod.src(f.f1[a]) != f.f0[dom.src(a)] || cod.tgt(f.f1[a]) != f.f0[dom.tgt(a)]) {
      fail(ErrorKind::NotAMorphism, "endpoints of " + arr_str(a));
    }
    for (Arr b : dom.arrows_into(dom.src(a))) {
      if (f.f1[dom.comp(a, b)] != cod.comp(f.f1[a], f.f1[b])) {
        fail(ErrorKind::NotAMorphism, "composite (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
}

bool is_morphism(const FiniteGroupoid& dom, const FiniteGroupoid& cod, const GroupoidMorphism& f) {
  try {
    validate_morphism(dom, cod, f);
    return true;
  } catch (const Error&) {
    return false;
  }
}

GroupoidMorphism identity_morphism(const FiniteGroupoid& g) {
  GroupoidMorphism f;
  f.f0.resize(g.num_objects());
  std::iota(f.f0.begin(), f.f0.end(), 0);
  f.f1.resize(g.num_arrows());
  std::iota(f.f1.begin(), f.f1.end(), 0);
  return f;
}

GroupoidMorphism compose(const GroupoidMorphism& outer, const GroupoidMorphism& inner) {
  GroupoidMorphism f;
  for (Obj o : inner.f0) f.f0.push_back(outer.f0[o]);
  for (Arr a : inner.f1) f.f1.push_back(outer.f1[a]);
  return f;
}

FiniteGroupoid group_as_groupoid(const FiniteGroup& g) {
  auto out = trivial_bundle(1, g);
  out.object_names = {"*"};
  return out;
}

FiniteGroupoid point_groupoid() { return discrete_groupoid(1); }

FiniteGroupoid discrete_groupoid(std::size_t n) {
  std::vector<Obj> ends(n);
  std::iota(ends.begin(), ends.end(), 0);
  return FiniteGroupoid::build(n, ends, ends, [](Arr a, Arr) { return a; });
}

FiniteGroupoid pair_groupoid(std::size_t n) {
  std::vector<Obj> src(n * n), tgt(n * n);
  for (Obj s = 0; s < n; ++s)
    for (Obj t = 0; t < n; ++t) {
      src[s * n + t] = s;
      tgt[s * n + t] = t;
    }
  const auto nn = static_cast<Arr>(n);
  return FiniteGroupoid::build(n, src, tgt, [nn](Arr a, Arr b) { return (b / nn) * nn + a % nn; });
}

FiniteGroupoid trivial_bundle(std::size_t num_objects, const FiniteGroup& g) {
  const auto k = static_cast<Arr>(g.order());
  std::vector<Obj> ends(num_objects * k);
  for (Arr a = 0; a < ends.size(); ++a) ends[a] = a / k;
  auto out = FiniteGroupoid::build(num_objects, ends, ends,
                                   [&](Arr a, Arr b) { return (a / k) * k + g.mul(a % k, b % k); },
                                   FiniteGroupoid::Check::Structure);
  for (Arr a = 0; a < out.num_arrows(); ++a) out.arrow_names[a] = g.name(a % k) + "_" + std::to_string(a / k);
  return out;
}

FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const auto nb = static_cast<Arr>(b.num_arrows());
  const auto ob = static_cast<Obj>(b.num_objects());
  std::vector<Obj> src, tgt;
  for (Arr x = 0; x < a.num_arrows(); ++x)
    for (Arr y = 0; y < nb; ++y) {
      src.push_back(a.src(x) * ob + b.src(y));
      tgt.push_back(a.tgt(x) * ob + b.tgt(y));
    }
  return FiniteGroupoid::build(
      a.num_objects() * b.num_objects(), src, tgt,
      [&](Arr x, Arr y) { return a.comp(x / nb, y / nb) * nb + b.comp(x % nb, y % nb); },
      FiniteGroupoid::Check::Structure);
}

Arr CechGroupoid::arrow(std::uint32_t x, std::uint32_t i, std::uint32_t j) const {
  auto it = std::lower_bound(arrows.begin(), arrows.end(), std::array<std::uint32_t, 3>{x, i, j});
  if (it == arrows.end() || *it != std::array<std::uint32_t, 3>{x, i, j}) return kNone;
  return static_cast<Arr>(it - arrows.begin());
}

Obj CechGroupoid::object(std::uint32_t x, std::uint32_t i) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), std::pair{x, i});
  if (it == objects.end() || *it != std::pair{x, i}) return kNone;
  return static_cast<Obj>(it - objects.begin());
}

CechGroupoid cech_groupoid(std::size_t space_size, const std::vector<std::vector<std::uint32_t>>& cover) {
  std::vector<std::vector<bool>> member(cover.size(), std::vector<bool>(space_size, false));
  std::vector<bool> covered(space_size, false);
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (auto x : cover[i]) {
      if (x >= space_size) fail(ErrorKind::NotACover, "point " + std::to_string(x) + " outside the space");
      member[i][x] = true;
      covered[x] = true;
    }
  for (std::uint32_t x = 0; x < space_size; ++x)
    if (!covered[x]) fail(ErrorKind::NotACover, "point " + std::to_string(x) + " is not covered");

  CechGroupoid out;
  for (std::uint32_t x = 0; x < space_size; ++x)
    for (std::uint32_t i = 0; i < cover.size(); ++i)
      if (member[i][x]) out.objects.emplace_back(x, i);
  for (std::uint32_t x = 0; x < space_size; ++x)
    for (std::uint32_t i = 0; i < cover.size(); ++i)
      for (std::uint32_t j = 0; j < cover.size(); ++j)
        if (member[i][x] && member[j][x]) out.arrows.push_back({x, i, j});
  std::vector<Obj> src, tgt;
  for (const auto& [x, i, j] : out.arrows) {
    src.push_back(out.object(x, j));
    tgt.push_back(out.object(x, i));
  }
  out.groupoid = FiniteGroupoid::build(out.objects.size(), src, tgt, [&](Arr a, Arr b) {
    return out.arrow(out.arrows[a][0], out.arrows[a][1], out.arrows[b][2]);
  });
  for (Obj o = 0; o < out.objects.size(); ++o) {
    out.groupoid.object_names[o] = std::to_string(out.objects[o].first) + "@" + std::to_string(out.objects[o].second);
  }
  for (Arr a = 0; a < out.arrows.size(); ++a) {
    const auto& [x, i, j] = out.arrows[a];
    out.groupoid.arrow_names[a] = std::to_string(x) + "@" + std::to_string(i) + std::to_string(j);
  }
  for (const auto& [x, i] : out.objects) out.to_space.f0.push_back(x);
  for (const auto& t : out.arrows) out.to_space.f1.push_back(t[0]);
  return out;
}

PulledBackGroupoid pullback_groupoid(const FiniteGroupoid& delta, std::span<const Obj> f) {
  std::vector<bool> hit(delta.num_objects(), false);
  for (Obj o : f) {
    if (o >= delta.num_objects()) fail(ErrorKind::NotSurjective, "object map out of range");
    hit[o] = true;
  }
  for (Obj o = 0; o < delta.num_objects(); ++o)
    if (!hit[o]) fail(ErrorKind::NotSurjective, "object " + std::to_string(o) + " is not in the image");

  PulledBackGroupoid out;
  const auto m = static_cast<std::uint32_t>(f.size());
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      for (Arr g : delta.hom(f[a], f[b])) out.triples.push_back({a, g, b});
  std::sort(out.triples.begin(), out.triples.end());
  auto find = [&](std::array<std::uint32_t, 3> t) {
    return static_cast<Arr>(std::lower_bound(out.triples.begin(), out.triples.end(), t) - out.triples.begin());
  };
  std::vector<Obj> src, tgt;
  for (const auto& t : out.triples) {
    src.push_back(t[0]);
    tgt.push_back(t[2]);
  }
  out.groupoid = FiniteGroupoid::build(
      m, src, tgt,
      [&](Arr x, Arr y) {
        return find({out.triples[y][0], delta.comp(out.triples[x][1], out.triples[y][1]), out.triples[x][2]});
      },
      FiniteGroupoid::Check::Structure);
  out.projection.f0.assign(f.begin(), f.end());
  for (const auto& t : out.triples) out.projection.f1.push_back(t[1]);
  return out;
}

Verdict is_morita_1(const FiniteGroupoid& dom, const FiniteGroupoid& cod, const GroupoidMorphism& f) {
  if (!is_morphism(dom, cod, f)) return Verdict::failure("not a groupoid morphism");
  std::vector<bool> hit(cod.num_objects(), false);
  for (Obj o : f.f0) hit[o] = true;
  for (Obj o = 0; o < cod.num_objects(); ++o)
    if (!hit[o]) return Verdict::failure("object " + std::to_string(o) + " is not covered");
  for (Obj m = 0; m < dom.num_objects(); ++m) {
    for (Obj n = 0; n < dom.num_objects(); ++n) {
      const auto source = dom.hom(m, n);
      const auto target = cod.hom(f.f0[m], f.f0[n]);
      std::vector<Arr> image;
      for (Arr a : source) image.push_back(f.f1[a]);
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
        return Verdict::failure("arrow map not injective on hom(" + std::to_string(m) + "," + std::to_string(n) + ")");
      }
      if (image.size() != target.size()) {
        return Verdict::failure("arrow map not surjective onto hom(" + std::to_string(f.f0[m]) + "," +
                                std::to_string(f.f0[n]) + ") over (" + std::to_string(m) + "," +
                                std::to_string(n) + ")");
      }
    }
  }
  return Verdict::pass();
}

QuotientGroupoid quotient_by_bundle(const FiniteGroupoid& g, const FiniteGroupoid& bundle, const GroupoidMorphism& j) {
  validate_morphism(bundle, g, j);
  for (Arr k = 0; k < bundle.num_arrows(); ++k)
    if (!bundle.is_loop(k)) fail(ErrorKind::NotAMorphism, "embedded groupoid is not a bundle of groups");
  for (Obj o = 0; o < bundle.num_objects(); ++o)
    if (j.f0[o] != o || bundle.num_objects() != g.num_objects()) {
      fail(ErrorKind::NotAMorphism, "embedding is not the identity on objects");
    }
  std::vector<bool> in_image(g.num_arrows(), false);
  for (Arr k = 0; k < bundle.num_arrows(); ++k) {
    if (in_image[j.f1[k]]) fail(ErrorKind::NotInjective, "bundle arrow " + std::to_string(k));
    in_image[j.f1[k]] = true;
  }
  for (Arr a = 0; a < g.num_arrows(); ++a) {
    for (Arr k : bundle.hom(g.src(a), g.src(a))) {
      const Arr c = g.comp(g.comp(a, j.f1[k]), g.inv(a));
      if (!in_image[c]) {
        fail(ErrorKind::NotNormal, "conjugate of bundle arrow " + std::to_string(k) + " by " + arr_str(a));
      }
    }
  }
  QuotientGroupoid out;
  std::vector<Arr> cls(g.num_arrows(), kNone);
  for (Arr a = 0; a < g.num_arrows(); ++a) {
    if (cls[a] != kNone) continue;
    const auto id = static_cast<Arr>(out.representatives.size());
    out.representatives.push_back(a);
    for (Arr k : bundle.hom(g.src(a), g.src(a))) cls[g.comp(a, j.f1[k])] = id;
  }
  std::vector<Obj> src, tgt;
  for (Arr r : out.representatives) {
    src.push_back(g.src(r));
    tgt.push_back(g.tgt(r));
  }
  out.groupoid = FiniteGroupoid::build(g.num_objects(), src, tgt, [&](Arr x, Arr y) {
    return cls[g.comp(out.representatives[x], out.representatives[y])];
  });
  out.groupoid.object_names = g.object_names;
  for (Arr x = 0; x < out.representatives.size(); ++x) {
    out.groupoid.arrow_names[x] = "[" + g.arrow_names[out.representatives[x]] + "]";
  }
  out.projection.f0 = identity_morphism(g).f0;
  out.projection.f1 = cls;
  return out;
}

Subgroupoid subgroupoid(const FiniteGroupoid& g, std::vector<Arr> arrows) {
  std::sort(arrows.begin(), arrows.end());
  arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
  std::vector<Arr> local(g.num_arrows(), kNone);
  for (Arr i = 0; i < arrows.size(); ++i) local[arrows[i]] = i;
  std::vector<Obj> src, tgt;
  for (Arr a : arrows) {
    src.push_back(g.src(a));
    tgt.push_back(g.tgt(a));
  }
  Subgroupoid out;
  out.groupoid = FiniteGroupoid::build(
      g.num_objects(), src, tgt,
      [&](Arr x, Arr y) {
        const Arr c = local[g.comp(arrows[x], arrows[y])];
        if (c == kNone) fail(ErrorKind::NotClosed, "subgroupoid composite leaves the subset");
        return c;
      },
      FiniteGroupoid::Check::Structure);
  out.groupoid.object_names = g.object_names;
  for (Arr i = 0; i < arrows.size(); ++i) out.groupoid.arrow_names[i] = g.arrow_names[arrows[i]];
  out.inclusion.f0 = identity_morphism(g).f0;
  out.inclusion.f1 = arrows;
  return out;
}

namespace {

struct ObjectProfile {
  std::size_t loops, out_degree, in_degree;
  auto operator<=>(const ObjectProfile&) const = default;
};

ObjectProfile profile(const FiniteGroupoid& g, Obj o) {
  return {g.hom(o, o).size(), g.arrows_from(o).size(), g.arrows_into(o).size()};
}

std::size_t loop_order(const FiniteGroupoid& g, Arr a) {
  std::size_t k = 1;
  for (Arr x = a; !g.is_identity(x); x = g.comp(x, a)) ++k;
  return k;
}

class ArrowSearch {
 public:
  ArrowSearch(const FiniteGroupoid& a, const FiniteGroupoid& b, const std::vector<Obj>& f0,
              const IsoSearchOptions& options)
      : a_(a), b_(b), f0_(f0), options_(options) {
    for (Arr x = 0; x < a.num_arrows(); ++x) order_a_.push_back(a.is_loop(x) ? loop_order(a, x) : 0);
    for (Arr y = 0; y < b.num_arrows(); ++y) order_b_.push_back(b.is_loop(y) ? loop_order(b, y) : 0);
  }

  std::optional<GroupoidMorphism> run() {
    State s;
    s.f1.assign(a_.num_arrows(), kNone);
    s.used.assign(b_.num_arrows(), false);
    for (Obj o = 0; o < a_.num_objects(); ++o)
      if (!assign(s, a_.idn(o), b_.idn(f0_[o]))) return std::nullopt;
    for (auto [x, y] : options_.seeds)
      if (!assign(s, x, y)) return std::nullopt;
    return search(s);
  }

 private:
  struct State {
    std::vector<Arr> f1;
    std::vector<bool> used;
    std::vector<Arr> assigned;
  };

  bool compatible(Arr x, Arr y) const {
    return b_.src(y) == f0_[a_.src(x)] && b_.tgt(y) == f0_[a_.tgt(x)] && order_a_[x] == order_b_[y];
  }

  // Assigns x ↦ y and closes the assignment under composition and inverses.
  bool assign(State& s, Arr x, Arr y) const {
    std::vector<std::pair<Arr, Arr>> work{{x, y}};
    while (!work.empty()) {
      auto [u, v] = work.back();
      work.pop_back();
      if (s.f1[u] != kNone) {
        if (s.f1[u] != v) return false;
        continue;
      }
      if (s.used[v] || !compatible(u, v)) return false;
      s.f1[u] = v;
      s.used[v] = true;
      s.assigned.push_back(u);
      work.emplace_back(a_.inv(u), b_.inv(v));
      for (std::size_t k = 0; k + 1 < s.assigned.size(); ++k) {
        const Arr w = s.assigned[k];
        if (Arr c = a_.comp(u, w); c != kNone) work.emplace_back(c, b_.comp(v, s.f1[w]));
        if (Arr c = a_.comp(w, u); c != kNone) work.emplace_back(c, b_.comp(s.f1[w], v));
      }
    }
    return true;
  }

  std::optional<GroupoidMorphism> search(State& s) const {
    Arr best = kNone;
    std::vector<Arr> best_candidates;
    for (Arr x = 0; x < a_.num_arrows(); ++x) {
      if (s.f1[x] != kNone) continue;
      std::vector<Arr> cands;
      for (Arr y : b_.hom(f0_[a_.src(x)], f0_[a_.tgt(x)]))
        if (!s.used[y] && compatible(x, y)) cands.push_back(y);
      if (cands.empty()) return std::nullopt;
      if (best == kNone || cands.size() < best_candidates.size()) {
        best = x;
        best_candidates = std::move(cands);
      }
    }
    if (best == kNone) {
      GroupoidMorphism f{f0_, s.f1};
      if (!is_morphism(a_, b_, f)) return std::nullopt;
      if (options_.accept && !options_.accept(f)) return std::nullopt;
      return f;
    }
    for (Arr y : best_candidates) {
      State next = s;
      if (!assign(next, best, y)) continue;
      if (auto found = search(next)) return found;
    }
    return std::nullopt;
  }

  const FiniteGroupoid& a_;
  const FiniteGroupoid& b_;
  const std::vector<Obj>& f0_;
  const IsoSearchOptions& options_;
  std::vector<std::size_t> order_a_, order_b_;
};

bool hom_sizes_match(const FiniteGroupoid& a, const FiniteGroupoid& b, const std::vector<Obj>& f0, Obj upto) {
  for (Obj m = 0; m <= upto; ++m) {
    if (a.hom(m, upto).size() != b.hom(f0[m], f0[upto]).size()) return false;
    if (a.hom(upto, m).size() != b.hom(f0[upto], f0[m]).size()) return false;
  }
  return true;
}

std::optional<GroupoidMorphism> search_objects(const FiniteGroupoid& a, const FiniteGroupoid& b,
                                               std::vector<Obj>& f0, std::vector<bool>& used, Obj next,
                                               const IsoSearchOptions& options) {
  if (next == a.num_objects()) return ArrowSearch(a, b, f0, options).run();
  const auto want = profile(a, next);
  for (Obj o = 0; o < b.num_objects(); ++o) {
    if (used[o] || profile(b, o) != want) continue;
    f0[next] = o;
    if (!hom_sizes_match(a, b, f0, next)) continue;
    used[o] = true;
    if (auto found = search_objects(a, b, f0, used, next + 1, options)) return found;
    used[o] = false;
  }
  return std::nullopt;
}

}  // namespace

std::optional<GroupoidMorphism> groupoid_iso_search(const FiniteGroupoid& a, const FiniteGroupoid& b,
                                                    const IsoSearchOptions& options) {
  if (a.num_arrows() > options.cap || b.num_arrows() > options.cap) {
    fail(ErrorKind::CapExceeded, "iso search limited to " + std::to_string(options.cap) + " arrows");
  }
  if (a.num_arrows() != b.num_arrows() || a.num_objects() != b.num_objects()) return std::nullopt;
  std::vector<ObjectProfile> pa, pb;
  for (Obj o = 0; o < a.num_objects(); ++o) pa.push_back(profile(a, o));
  for (Obj o = 0; o < b.num_objects(); ++o) pb.push_back(profile(b, o));
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  if (pa != pb) return std::nullopt;
  if (options.object_map) {
    const auto& f0 = *options.object_map;
    if (f0.size() != a.num_objects()) fail(ErrorKind::NotAMorphism, "object map has wrong size");
    std::vector<Obj> sorted = f0;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
    for (Obj o = 0; o < a.num_objects(); ++o)
      if (!hom_sizes_match(a, b, f0, o)) return std::nullopt;
    return ArrowSearch(a, b, f0, options).run();
  }
  std::vector<Obj> f0(a.num_objects(), kNone);
  std::vector<bool> used(b.num_objects(), false);
  return search_objects(a, b, f0, used, 0, options);
}

}  // namespace gerbekit
