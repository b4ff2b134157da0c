#pragma once

#include <map>
#include <random>
#include <stdexcept>

#include "gerbekit/cocycle.hpp"

namespace gerbekit::fixtures {

inline std::vector<Elem> ad_table(const FiniteGroup& G, Elem h) {
  std::vector<Elem> m(G.order());
  for (Elem y = 0; y < G.order(); ++y) m[y] = G.conj(h, y);
  return m;
}

inline std::vector<Elem> compose_tables(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  std::vector<Elem> m(b.size());
  for (std::size_t y = 0; y < b.size(); ++y) m[y] = a[b[y]];
  return m;
}

inline std::vector<Elem> invert_table(const std::vector<Elem>& a) {
  std::vector<Elem> m(a.size());
  for (std::size_t y = 0; y < a.size(); ++y) m[a[y]] = static_cast<Elem>(y);
  return m;
}

// g solved from identity 1 alone: for each (i,j,k,x) the first g with
// λij∘λjk = AD_g∘λik. Returns false when some triple has no solution.
inline bool solve_identity1(NonAbCocycle& c, const Cover& cover) {
  const auto& G = c.G;
  const auto n = static_cast<std::uint32_t>(cover.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        for (auto x : cover.common({i, j, k})) {
          const auto lhs = compose_tables(c.lambda.at({i, j, x}), c.lambda.at({j, k, x}));
          bool found = false;
          for (Elem g = 0; g < G.order() && !found; ++g) {
            if (compose_tables(ad_table(G, g), c.lambda.at({i, k, x})) == lhs) {
              c.g[{i, j, k, x}] = g;
              found = true;
            }
          }
          if (!found) return false;
        }
  return true;
}

// λij = ψi∘AD_{hij}∘ψj⁻¹ and gijk = ψi(hij·hjk·hik⁻¹), valid for any h and ψ.
inline NonAbCocycle twisted_cocycle(const FiniteGroup& G, const Automorphisms& aut, const Cover& cover, std::mt19937& rng) {
  NonAbCocycle c{G, {}, {}};
  const auto n = static_cast<std::uint32_t>(cover.size());
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Elem>> psi;
  std::map<Key3, Elem> h;
  std::uniform_int_distribution<Elem> pick_g(0, static_cast<Elem>(G.order() - 1));
  std::uniform_int_distribution<Elem> pick_a(0, static_cast<Elem>(aut.maps.size() - 1));
  for (std::uint32_t i = 0; i < n; ++i)
    for (auto x : cover.opens[i]) psi[{i, x}] = aut.maps[pick_a(rng)];
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (auto x : cover.common({i, j})) {
        h[{i, j, x}] = pick_g(rng);
        c.lambda[{i, j, x}] =
            compose_tables(compose_tables(psi[{i, x}], ad_table(G, h[{i, j, x}])), invert_table(psi[{j, x}]));
      }
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        for (auto x : cover.common({i, j, k})) {
          const Elem v = G.mul(G.mul(h[{i, j, x}], h[{j, k, x}]), G.inv(h[{i, k, x}]));
          c.g[{i, j, k, x}] = psi[{i, x}][v];
        }
  return c;
}

inline NonAbCocycle constant_cocycle(const FiniteGroup& G, const Cover& cover) {
  NonAbCocycle c{G, {}, {}};
  std::vector<Elem> id(G.order());
  for (Elem y = 0; y < G.order(); ++y) id[y] = y;
  const auto n = static_cast<std::uint32_t>(cover.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      for (auto x : cover.common({i, j})) c.lambda[{i, j, x}] = id;
      for (std::uint32_t k = 0; k < n; ++k)
        for (auto x : cover.common({i, j, k})) c.g[{i, j, k, x}] = G.unit();
    }
  return c;
}

// S3 over a point covered by several copies of itself, λii = id and λij =
// AD of a transposition for i ≠ j (λ01 = AD_t for t = (0 1)); g solved from
// identity 1 by brute force.
inline NonAbCocycle s3_point_cocycle(const Cover& cover) {
  const auto G = symmetric_group(3);
  NonAbCocycle c{G, {}, {}};
  std::vector<Elem> transpositions;
  for (Elem a = 0; a < G.order(); ++a)
    if (G.elem_order(a) == 2) transpositions.push_back(a);
  const auto n = static_cast<std::uint32_t>(cover.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      c.lambda[{i, j, 0}] = ad_table(G, i == j ? G.unit() : transpositions[(i + 2 * j) % 3]);
  if (!solve_identity1(c, cover)) throw std::logic_error("identity 1 has no solution");
  return c;
}

}  // namespace gerbekit::fixtures
