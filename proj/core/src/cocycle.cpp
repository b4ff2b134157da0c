#include "gerbekit/cocycle.hpp"

#include <algorithm>
#include <sstream>

#include "gerbekit/error.hpp"

namespace gerbekit {

namespace {

std::string tuple_str(std::initializer_list<std::uint32_t> idx, std::uint32_t x) {
  std::ostringstream os;
  os << "(";
  const char* names = "ijkl";
  std::size_t n = 0;
  for (auto v : idx) os << names[n++] << "=" << v << ",";
  os << "x=" << x << ")";
  return os.str();
}

bool is_automorphism(const FiniteGroup& G, const std::vector<Elem>& m) {
  if (m.size() != G.order()) return false;
  std::vector<bool> hit(G.order(), false);
  for (Elem v : m) {
    if (v >= G.order() || hit[v]) return false;
    hit[v] = true;
  }
  return is_homomorphism(G, G, m);
}

}  // namespace

bool Cover::contains(std::uint32_t i, std::uint32_t x) const {
  return std::binary_search(opens[i].begin(), opens[i].end(), x);
}

std::vector<std::uint32_t> Cover::common(std::initializer_list<std::uint32_t> idx) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < space_size; ++x)
    if (std::all_of(idx.begin(), idx.end(), [&](std::uint32_t i) { return contains(i, x); })) out.push_back(x);
  return out;
}

Cover make_cover(std::size_t space_size, std::vector<std::vector<std::uint32_t>> opens) {
  std::vector<bool> covered(space_size, false);
  for (auto& u : opens) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    for (auto x : u) {
      if (x >= space_size) fail(ErrorKind::NotACover, "point " + std::to_string(x) + " outside the space");
      covered[x] = true;
    }
  }
  for (std::uint32_t x = 0; x < space_size; ++x)
    if (!covered[x]) fail(ErrorKind::NotACover, "point " + std::to_string(x) + " is not covered");
  return Cover{space_size, std::move(opens)};
}

std::string CocycleReport::summary() const {
  std::string out;
  auto line = [&](const char* name, const Verdict& v) {
    out += name;
    out += v.ok ? ": pass" : ": FAIL " + v.witness;
    out += "\n";
  };
  line("tables", tables);
  line("identity 1", identity1);
  line("identity 2", identity2);
  return out;
}

CocycleReport validate_nonab(const NonAbCocycle& c, const Cover& cover) {
  CocycleReport r;
  const auto& G = c.G;
  const auto n = static_cast<std::uint32_t>(cover.size());

  for (std::uint32_t i = 0; i < n && r.tables.ok; ++i)
    for (std::uint32_t j = 0; j < n && r.tables.ok; ++j)
      for (auto x : cover.common({i, j})) {
        auto it = c.lambda.find({i, j, x});
        if (it == c.lambda.end()) {
          r.tables = Verdict::failure("missing λ at " + tuple_str({i, j}, x));
          break;
        }
        if (!is_automorphism(G, it->second)) {
          r.tables = Verdict::failure("λ at " + tuple_str({i, j}, x) + " is not an automorphism");
          break;
        }
      }
  for (std::uint32_t i = 0; i < n && r.tables.ok; ++i)
    for (std::uint32_t j = 0; j < n && r.tables.ok; ++j)
      for (std::uint32_t k = 0; k < n && r.tables.ok; ++k)
        for (auto x : cover.common({i, j, k})) {
          auto it = c.g.find({i, j, k, x});
          if (it == c.g.end() || it->second >= G.order()) {
            r.tables = Verdict::failure("missing or out-of-range g at " + tuple_str({i, j, k}, x));
            break;
          }
        }
  if (!r.tables.ok) {
    r.identity1 = r.identity2 = Verdict::failure("not checked");
    return r;
  }

  auto lam = [&](std::uint32_t i, std::uint32_t j, std::uint32_t x) -> const std::vector<Elem>& {
    return c.lambda.at({i, j, x});
  };
  auto g = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k, std::uint32_t x) { return c.g.at({i, j, k, x}); };

  for (std::uint32_t i = 0; i < n && r.identity1.ok; ++i)
    for (std::uint32_t j = 0; j < n && r.identity1.ok; ++j)
      for (std::uint32_t k = 0; k < n && r.identity1.ok; ++k)
        for (auto x : cover.common({i, j, k})) {
          const auto &lij = lam(i, j, x), &ljk = lam(j, k, x), &lik = lam(i, k, x);
          const Elem h = g(i, j, k, x);
          bool ok = true;
          for (Elem y = 0; y < G.order() && ok; ++y) ok = lij[ljk[y]] == G.conj(h, lik[y]);
          if (!ok) {
            r.identity1 = Verdict::failure("λij∘λjk ≠ AD_gijk∘λik at " + tuple_str({i, j, k}, x));
            break;
          }
        }
  for (std::uint32_t i = 0; i < n && r.identity2.ok; ++i)
    for (std::uint32_t j = 0; j < n && r.identity2.ok; ++j)
      for (std::uint32_t k = 0; k < n && r.identity2.ok; ++k)
        for (std::uint32_t l = 0; l < n && r.identity2.ok; ++l)
          for (auto x : cover.common({i, j, k, l})) {
            const Elem lhs = G.mul(g(i, j, k, x), g(i, k, l, x));
            const Elem rhs = G.mul(lam(i, j, x)[g(j, k, l, x)], g(i, j, l, x));
            if (lhs != rhs) {
              r.identity2 = Verdict::failure("gijk·gikl ≠ λij(gjkl)·gijl at " + tuple_str({i, j, k, l}, x));
              break;
            }
          }
  return r;
}

TwoGroupoid cocycle_apex(const NonAbCocycle& c, const CechGroupoid& cech) {
  const auto& G = c.G;
  const auto n = static_cast<Arr>(G.order());
  const auto& C = cech.groupoid;

  auto lambda_at = [&](Arr a) -> const std::vector<Elem>& {
    const auto& [x, i, j] = cech.arrows[a];
    auto it = c.lambda.find({i, j, x});
    if (it == c.lambda.end() || it->second.size() != n) {
      fail(ErrorKind::InvalidCocycle, "missing λ at " + tuple_str({i, j}, x));
    }
    return it->second;
  };
  auto g_at = [&](Arr a, Arr b) {
    const auto& [x, i, j] = cech.arrows[a];
    const auto k = cech.arrows[b][2];
    auto it = c.g.find({i, j, k, x});
    if (it == c.g.end() || it->second >= n) fail(ErrorKind::InvalidCocycle, "missing g at " + tuple_str({i, j, k}, x));
    return it->second;
  };

  // (x,i,j,α)·(x,j,k,β) = (x,i,k, α·λij(β)·gijk)
  auto mult = [&](Arr p, Arr q) {
    const Arr a = p / n, b = q / n;
    return C.comp(a, b) * n + G.mul(G.mul(p % n, lambda_at(a)[q % n]), g_at(a, b));
  };
  std::vector<Obj> src, tgt;
  for (Arr a = 0; a < C.num_arrows(); ++a)
    for (Elem g = 0; g < n; ++g) {
      src.push_back(C.src(a));
      tgt.push_back(C.tgt(a));
    }
  auto one = FiniteGroupoid::build(C.num_objects(), src, tgt, mult);
  for (Arr p = 0; p < one.num_arrows(); ++p) one.arrow_names[p] = C.arrow_names[p / n] + ":" + G.name(p % n);
  one.object_names = C.object_names;

  std::vector<Arr> l, u;
  for (Arr a = 0; a < C.num_arrows(); ++a)
    for (Elem g1 = 0; g1 < n; ++g1)
      for (Elem g2 = 0; g2 < n; ++g2) {
        l.push_back(a * n + g1);
        u.push_back(a * n + g2);
      }
  auto cell = [n](Arr lower, Arr upper) { return lower * n + upper % n; };
  return TwoGroupoid::build(
      std::move(one), l, u, [&](Cell b, Cell a) { return cell(l[a], u[b]); },
      [&](Cell a, Cell b) { return cell(mult(l[a], l[b]), mult(u[a], u[b])); }, TwoGroupoid::Check::Full);
}

CocycleBundle cocycle_to_bundle(const NonAbCocycle& c, const Cover& cover, std::shared_ptr<const AutTarget> target) {
  const auto report = validate_nonab(c, cover);
  if (!report.ok()) fail(ErrorKind::InvalidCocycle, report.summary());
  if (!target) target = make_aut_target(c.G);
  if (!(target->G == c.G)) fail(ErrorKind::IncompatibleSpans, "target built for a different group");

  CocycleBundle out;
  out.cech = cech_groupoid(cover.space_size, cover.opens);
  const auto& cech = out.cech;
  auto apex = std::make_shared<const TwoGroupoid>(cocycle_apex(c, cech));
  const auto& G = c.G;
  const auto& aut = target->aut;
  const auto n = static_cast<Arr>(G.order());

  std::vector<Elem> lambda_id(cech.arrows.size());
  for (Arr a = 0; a < cech.arrows.size(); ++a) {
    const auto& [x, i, j] = cech.arrows[a];
    lambda_id[a] = aut.find(c.lambda.at({i, j, x}));
  }
  const auto ad = inner_hom(G, aut);

  auto base = std::make_shared<const TwoGroupoid>(as_two_groupoid(discrete_groupoid(cover.space_size)));
  TwoMorphism left, right;
  for (Obj o = 0; o < cech.objects.size(); ++o) {
    left.f0.push_back(cech.objects[o].first);
    right.f0.push_back(0);
  }
  for (Arr p = 0; p < apex->num_arrows(); ++p) {
    const Arr a = p / n;
    left.f1.push_back(cech.arrows[a][0]);
    right.f1.push_back(aut.group.mul(ad(p % n), lambda_id[a]));
  }
  for (Cell k = 0; k < apex->num_cells(); ++k) {
    const Arr lower = apex->l(k);
    const Elem g1 = lower % n, g2 = apex->u(k) % n;
    left.f2.push_back(cech.arrows[lower / n][0]);
    right.f2.push_back(target->cm.cell(G.mul(g2, G.inv(g1)), right.f1[lower]));
  }
  out.span = make_span(base, apex, target->two, std::move(left), std::move(right));
  out.target = std::move(target);
  return out;
}

Verdict validate_ab(const AbCocycle& c, const Cover& cover) {
  const auto& A = c.A;
  if (!A.is_abelian()) return Verdict::failure("the coefficient group is not abelian");
  const auto n = static_cast<std::uint32_t>(cover.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        for (auto x : cover.common({i, j, k})) {
          auto it = c.g.find({i, j, k, x});
          if (it == c.g.end() || it->second >= A.order()) {
            return Verdict::failure("missing or out-of-range g at " + tuple_str({i, j, k}, x));
          }
        }
  auto g = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k, std::uint32_t x) { return c.g.at({i, j, k, x}); };
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t l = 0; l < n; ++l)
          for (auto x : cover.common({i, j, k, l})) {
            // gjkl + gijl = gikl + gijk
            if (A.mul(g(j, k, l, x), g(i, j, l, x)) != A.mul(g(i, k, l, x), g(i, j, k, x))) {
              return Verdict::failure("Čech identity fails at " + tuple_str({i, j, k, l}, x));
            }
          }
  return Verdict::pass();
}

AbCocycle add_coboundary(const AbCocycle& c, const std::map<Key3, Elem>& h) {
  AbCocycle out = c;
  const auto& A = c.A;
  for (auto& [key, value] : out.g) {
    const auto [i, j, k, x] = key;
    const Elem d = A.mul(A.mul(h.at({j, k, x}), A.inv(h.at({i, k, x}))), h.at({i, j, x}));
    value = A.mul(value, d);
  }
  return out;
}

CechExtension ab_cocycle_to_central_extension(const AbCocycle& c, const Cover& cover, bool validate) {
  if (validate) {
    if (auto v = validate_ab(c, cover); !v) fail(ErrorKind::InvalidCocycle, v.witness);
  } else if (!c.A.is_abelian()) {
    fail(ErrorKind::InvalidCocycle, "the coefficient group is not abelian");
  }
  CechExtension out;
  out.cech = cech_groupoid(cover.space_size, cover.opens);
  const auto& cech = out.cech;
  const auto& C = cech.groupoid;
  const auto& A = c.A;
  const auto n = static_cast<Arr>(A.order());

  auto g_at = [&](Arr a, Arr b) {
    const auto& [x, i, j] = cech.arrows[a];
    const auto k = cech.arrows[b][2];
    auto it = c.g.find({i, j, k, x});
    if (it == c.g.end() || it->second >= n) fail(ErrorKind::InvalidCocycle, "missing g at " + tuple_str({i, j, k}, x));
    return it->second;
  };
  std::vector<Obj> src, tgt;
  for (Arr a = 0; a < C.num_arrows(); ++a)
    for (Elem v = 0; v < n; ++v) {
      src.push_back(C.src(a));
      tgt.push_back(C.tgt(a));
    }
  FiniteGroupoid tilde;
  try {
    tilde = FiniteGroupoid::build(C.num_objects(), src, tgt, [&](Arr p, Arr q) {
      const Arr a = p / n, b = q / n;
      return C.comp(a, b) * n + A.mul(g_at(a, b), A.mul(p % n, q % n));
    });
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidCocycle) throw;
    fail(ErrorKind::AssociativityFailure, e.what());
  }
  for (Arr p = 0; p < tilde.num_arrows(); ++p) tilde.arrow_names[p] = C.arrow_names[p / n] + ":" + A.name(p % n);
  tilde.object_names = C.object_names;

  GroupoidMorphism i, phi;
  for (Obj o = 0; o < C.num_objects(); ++o) {
    i.f0.push_back(o);
    phi.f0.push_back(o);
    const auto [x, u] = cech.objects[o];
    const Arr loop = cech.arrow(x, u, u);
    const Elem giii = c.g.at({u, u, u, x});
    for (Elem a = 0; a < n; ++a) i.f1.push_back(loop * n + A.mul(a, A.inv(giii)));
  }
  for (Arr p = 0; p < tilde.num_arrows(); ++p) phi.f1.push_back(p / n);
  out.extension = make_extension(A, std::move(tilde), C, std::move(i), std::move(phi));
  return out;
}

FpVector ab_cocycle_cochain(const DeltaSet& cech_nerve, const CechGroupoid& cech, const AbCocycle& c,
                            const std::vector<std::uint32_t>& chi, std::uint32_t p) {
  FpVector out(p, cech_nerve.size(2));
  for (std::uint32_t s = 0; s < cech_nerve.size(2); ++s) {
    const auto& e01 = cech.arrows[cech_nerve.edge(2, s, 0, 1)];
    const auto& e12 = cech.arrows[cech_nerve.edge(2, s, 1, 2)];
    out.set(s, chi[c.g.at({e12[1], e12[2], e01[2], e12[0]})]);
  }
  return out;
}

}  // namespace gerbekit
