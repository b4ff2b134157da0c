#include "gerbekit/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>

#include "gerbekit/error.hpp"

namespace gerbekit {

std::size_t cap_from_env(std::size_t fallback) {
  if (const char* env = std::getenv("GERBEKIT_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  return names;
}

}  // namespace

FiniteGroup::FiniteGroup() : n_(1), table_{0}, inv_{0}, unit_(0), names_{"e"} {}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<Elem>>& table,
                                    std::vector<std::string> names) {
  const std::size_t n = table.size();
  if (n == 0) fail(ErrorKind::MalformedTable, "empty table");
  FiniteGroup g;
  g.n_ = n;
  g.table_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) {
      fail(ErrorKind::MalformedTable, "row " + std::to_string(a) + " has wrong length");
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) {
        fail(ErrorKind::MalformedTable,
             "entry (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
      }
      g.table_[a * n + b] = table[a][b];
    }
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
          fail(ErrorKind::NotAssociative, "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                              std::to_string(c) + ")");
        }
      }
    }
  }
  g.unit_ = kNone;
  for (Elem e = 0; e < n && g.unit_ == kNone; ++e) {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) g.unit_ = e;
  }
  if (g.unit_ == kNone) fail(ErrorKind::NoUnit, "no two-sided unit");
  g.inv_.assign(n, kNone);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (g.mul(a, b) == g.unit_ && g.mul(b, a) == g.unit_) {
        g.inv_[a] = b;
        break;
      }
    }
    if (g.inv_[a] == kNone) fail(ErrorKind::NoInverse, "element " + std::to_string(a));
  }
  g.names_ = names.empty() ? default_names(n) : std::move(names);
  if (g.names_.size() != n) fail(ErrorKind::MalformedTable, "name count differs from table size");
  return g;
}

std::size_t FiniteGroup::elem_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != unit_; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<std::vector<Elem>> FiniteGroup::rows() const {
  std::vector<std::vector<Elem>> out(n_, std::vector<Elem>(n_));
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) out[a][b] = table_[a * n_ + b];
  return out;
}

FiniteGroup trivial_group() { return FiniteGroup(); }

FiniteGroup cyclic_group(std::size_t n) {
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Elem>((a + b) % n);
  return FiniteGroup::from_table(t);
}

FiniteGroup symmetric_group(std::size_t k) {
  std::vector<std::vector<Elem>> perms;
  std::vector<Elem> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<Elem>, Elem> index;
  for (Elem i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  const std::size_t n = perms.size();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<Elem> c(k);
      for (std::size_t x = 0; x < k; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index.at(c);
    }
    for (Elem x : perms[a]) names[a] += std::to_string(x);
  }
  return FiniteGroup::from_table(t, names);
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order() * h.order();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<std::string> names(n);
  for (Elem a = 0; a < n; ++a) {
    const Elem ag = a / h.order(), ah = a % h.order();
    names[a] = "(" + g.name(ag) + "," + h.name(ah) + ")";
    for (Elem b = 0; b < n; ++b) {
      const Elem bg = b / h.order(), bh = b % h.order();
      t[a][b] = static_cast<Elem>(g.mul(ag, bg) * h.order() + h.mul(ah, bh));
    }
  }
  return FiniteGroup::from_table(t, names);
}

bool is_homomorphism(const FiniteGroup& dom, const FiniteGroup& cod, std::span<const Elem> map) {
  if (map.size() != dom.order()) return false;
  for (Elem v : map)
    if (v >= cod.order()) return false;
  for (Elem a = 0; a < dom.order(); ++a)
    for (Elem b = 0; b < dom.order(); ++b)
      if (map[dom.mul(a, b)] != cod.mul(map[a], map[b])) return false;
  return true;
}

GroupHom make_hom(const FiniteGroup& dom, const FiniteGroup& cod, std::vector<Elem> map) {
  if (!is_homomorphism(dom, cod, map)) fail(ErrorKind::NotAHomomorphism, "group map");
  return GroupHom{std::move(map)};
}

std::vector<Elem> kernel(const FiniteGroup& dom, const FiniteGroup& cod, const GroupHom& hom) {
  std::vector<Elem> out;
  for (Elem a = 0; a < dom.order(); ++a)
    if (hom(a) == cod.unit()) out.push_back(a);
  return out;
}

void validate_action(const FiniteGroup& acted, const FiniteGroup& actor, const RightAction& act) {
  if (act.actor_order != actor.order() || act.table.size() != acted.order() * actor.order()) {
    fail(ErrorKind::MalformedTable, "action table has wrong shape");
  }
  for (Elem h = 0; h < actor.order(); ++h) {
    std::vector<Elem> m(acted.order());
    for (Elem g = 0; g < acted.order(); ++g) m[g] = act(g, h);
    std::vector<Elem> sorted = m;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        !is_homomorphism(acted, acted, m)) {
      fail(ErrorKind::NotAHomomorphism, "g -> g^" + std::to_string(h) + " is not an automorphism");
    }
  }
  for (Elem g = 0; g < acted.order(); ++g) {
    if (act(g, actor.unit()) != g) fail(ErrorKind::NotAHomomorphism, "unit acts nontrivially");
    for (Elem h1 = 0; h1 < actor.order(); ++h1)
      for (Elem h2 = 0; h2 < actor.order(); ++h2)
        if (act(act(g, h1), h2) != act(g, actor.mul(h1, h2))) {
          fail(ErrorKind::NotAHomomorphism, "action law fails at (" + std::to_string(g) + "," +
                                                std::to_string(h1) + "," + std::to_string(h2) + ")");
        }
  }
}

Elem Automorphisms::find(std::span<const Elem> map) const {
  auto it = std::lower_bound(maps.begin(), maps.end(), map,
                             [](const std::vector<Elem>& a, std::span<const Elem> b) {
                               return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                             });
  if (it != maps.end() && std::equal(it->begin(), it->end(), map.begin(), map.end())) {
    return static_cast<Elem>(it - maps.begin());
  }
  return kNone;
}

namespace {

// Greedy generating set: each new generator is the smallest element outside the
// subgroup generated so far.
std::vector<Elem> generators(const FiniteGroup& g) {
  std::vector<Elem> gens;
  std::vector<bool> in(g.order(), false);
  in[g.unit()] = true;
  std::vector<Elem> members{g.unit()};
  for (Elem a = 0; a < g.order(); ++a) {
    if (in[a]) continue;
    gens.push_back(a);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (Elem s : gens) {
        Elem y = g.mul(members[i], s);
        if (!in[y]) {
          in[y] = true;
          members.push_back(y);
        }
      }
    }
  }
  return gens;
}

// Extends generator images to a full map by closure; empty on conflict.
std::vector<Elem> extend(const FiniteGroup& g, const std::vector<Elem>& gens,
                         const std::vector<Elem>& images) {
  std::vector<Elem> m(g.order(), kNone);
  m[g.unit()] = g.unit();
  std::vector<Elem> queue{g.unit()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Elem x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem y = g.mul(x, gens[k]);
      Elem v = g.mul(m[x], images[k]);
      if (m[y] == kNone) {
        m[y] = v;
        queue.push_back(y);
      } else if (m[y] != v) {
        return {};
      }
    }
  }
  return m;
}

}  // namespace

Automorphisms automorphism_group(const FiniteGroup& g, std::size_t cap) {
  if (g.order() > cap) {
    fail(ErrorKind::CapExceeded, "|G| = " + std::to_string(g.order()) + " exceeds cap " + std::to_string(cap));
  }
  const auto gens = generators(g);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (Elem a = 0; a < g.order(); ++a)
      if (g.elem_order(a) == g.elem_order(gens[k])) candidates[k].push_back(a);

  std::vector<std::vector<Elem>> maps;
  std::vector<Elem> images(gens.size());
  std::vector<std::size_t> idx(gens.size(), 0);
  // Odometer over candidate tuples.
  while (true) {
    bool empty = false;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (candidates[k].empty()) empty = true;
      else images[k] = candidates[k][idx[k]];
    }
    if (empty) break;
    auto m = extend(g, gens, images);
    if (!m.empty()) {
      std::vector<Elem> sorted = m;
      std::sort(sorted.begin(), sorted.end());
      bool bijective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      if (bijective && is_homomorphism(g, g, m)) maps.push_back(std::move(m));
    }
    std::size_t k = 0;
    while (k < gens.size() && ++idx[k] == candidates[k].size()) idx[k++] = 0;
    if (k == gens.size()) break;
  }
  if (maps.empty()) maps.push_back({g.unit()});
  std::sort(maps.begin(), maps.end());

  Automorphisms out;
  out.maps = std::move(maps);
  const std::size_t n = out.maps.size();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<std::string> names(n);
  std::vector<Elem> comp(g.order());
  for (Elem a = 0; a < n; ++a) {
    names[a] = "phi" + std::to_string(a);
    for (Elem b = 0; b < n; ++b) {
      for (Elem x = 0; x < g.order(); ++x) comp[x] = out.maps[a][out.maps[b][x]];
      t[a][b] = out.find(comp);
    }
  }
  out.group = FiniteGroup::from_table(t, names);
  out.action.actor_order = n;
  out.action.table.assign(g.order() * n, 0);
  for (Elem phi = 0; phi < n; ++phi)
    for (Elem x = 0; x < g.order(); ++x) out.action.table[out.maps[phi][x] * n + phi] = x;  // φ⁻¹
  return out;
}

Subgroup subgroup(const FiniteGroup& g, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<Elem> local(g.order(), kNone);
  for (Elem i = 0; i < elems.size(); ++i) {
    if (elems[i] >= g.order()) fail(ErrorKind::NotSubgroup, "element out of range");
    local[elems[i]] = i;
  }
  if (elems.empty() || local[g.unit()] == kNone) fail(ErrorKind::NotSubgroup, "missing unit");
  std::vector<std::vector<Elem>> t(elems.size(), std::vector<Elem>(elems.size()));
  std::vector<std::string> names;
  for (Elem i = 0; i < elems.size(); ++i) {
    names.push_back(g.name(elems[i]));
    if (local[g.inv(elems[i])] == kNone) fail(ErrorKind::NotSubgroup, "not closed under inverse");
    for (Elem j = 0; j < elems.size(); ++j) {
      Elem p = local[g.mul(elems[i], elems[j])];
      if (p == kNone) fail(ErrorKind::NotSubgroup, "not closed under multiplication");
      t[i][j] = p;
    }
  }
  return Subgroup{FiniteGroup::from_table(t, names), GroupHom{elems}};
}

std::vector<Elem> center_elements(const FiniteGroup& g) {
  std::vector<Elem> z;
  for (Elem a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Elem b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

Subgroup center(const FiniteGroup& g) { return subgroup(g, center_elements(g)); }

GroupHom inner_hom(const FiniteGroup& g, const Automorphisms& aut) {
  std::vector<Elem> map(g.order());
  std::vector<Elem> ad(g.order());
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem x = 0; x < g.order(); ++x) ad[x] = g.conj(a, x);
    map[a] = aut.find(ad);
  }
  return make_hom(g, aut.group, std::move(map));
}

Quotient quotient_group(const FiniteGroup& g, std::span<const Elem> normal) {
  subgroup(g, std::vector<Elem>(normal.begin(), normal.end()));
  std::vector<bool> in(g.order(), false);
  for (Elem k : normal) in[k] = true;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem k : normal)
      if (!in[g.conj(a, k)]) fail(ErrorKind::NotNormal, "conjugate of " + std::to_string(k) + " by " + std::to_string(a));

  std::vector<Elem> coset(g.order(), kNone);
  std::vector<Elem> reps;
  for (Elem a = 0; a < g.order(); ++a) {
    if (coset[a] != kNone) continue;
    const Elem id = static_cast<Elem>(reps.size());
    reps.push_back(a);
    for (Elem k : normal) coset[g.mul(a, k)] = id;
  }
  const std::size_t n = reps.size();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<std::string> names(n);
  for (Elem i = 0; i < n; ++i) {
    names[i] = g.name(reps[i]) + "N";
    for (Elem j = 0; j < n; ++j) t[i][j] = coset[g.mul(reps[i], reps[j])];
  }
  return Quotient{FiniteGroup::from_table(t, names), GroupHom{coset}, reps};
}

std::vector<std::vector<std::uint32_t>> characters(const FiniteGroup& g, std::uint32_t p) {
  const auto zp = cyclic_group(p);
  const auto gens = generators(g);
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<Elem> images(gens.size(), 0);
  while (true) {
    std::vector<Elem> chi(g.order(), kNone);
    chi[g.unit()] = 0;
    std::vector<Elem> queue{g.unit()};
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i) {
      for (std::size_t k = 0; k < gens.size() && ok; ++k) {
        Elem y = g.mul(queue[i], gens[k]);
        Elem v = zp.mul(chi[queue[i]], images[k]);
        if (chi[y] == kNone) {
          chi[y] = v;
          queue.push_back(y);
        } else if (chi[y] != v) {
          ok = false;
        }
      }
    }
    if (ok && is_homomorphism(g, zp, chi)) out.push_back(chi);
    std::size_t k = 0;
    while (k < gens.size() && ++images[k] == p) images[k++] = 0;
    if (k == gens.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gerbekit
