#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "gerbekit/two_groupoid.hpp"

namespace gerbekit {

inline constexpr std::size_t kMaxNerveDim = 4;
inline constexpr std::size_t kDefaultNerveCap = 500'000;

/// The geometric nerve of a 2-groupoid as a Δ-set (faces only).
///
/// A q-simplex is stored as its vertices v_a, its edges e_ab: v_a → v_b for
/// a < b (lexicographic), and its triangles α_abc (lexicographic) with
/// u(α_abc) = e_bc and l(α_abc)·e_ab = e_ac. Tetrahedra commute in the form
///   (β_bcd ∘ₕ 1_{e_ab}) ∘ᵥ β_abd = (1_{e_cd} ∘ₕ β_abc) ∘ᵥ β_acd,
/// where β_abc = α_abc ∘ₕ 1_{e_ab} : e_ac ⇒ e_bc·e_ab.
class DeltaSet {
 public:
  static DeltaSet nerve(const TwoGroupoid& t, std::size_t max_dim = kMaxNerveDim,
                        std::size_t cap = cap_from_env(kDefaultNerveCap));

  std::size_t max_dim() const noexcept { return levels_.size() - 1; }
  std::size_t size(std::size_t q) const { return levels_[q].count; }
  /// d_i of simplex s in N_q, for q ≥ 1 and 0 ≤ i ≤ q.
  std::uint32_t face(std::size_t q, std::size_t i, std::uint32_t s) const {
    return levels_[q].faces[std::size_t{s} * (q + 1) + i];
  }

  static std::size_t stride(std::size_t q);
  static std::size_t edge_slot(std::size_t q, std::size_t a, std::size_t b);
  static std::size_t triangle_slot(std::size_t q, std::size_t a, std::size_t b, std::size_t c);

  std::span<const std::uint32_t> data(std::size_t q, std::uint32_t s) const {
    return {levels_[q].data.data() + std::size_t{s} * stride(q), stride(q)};
  }
  Obj vertex(std::size_t q, std::uint32_t s, std::size_t a) const { return data(q, s)[a]; }
  Arr edge(std::size_t q, std::uint32_t s, std::size_t a, std::size_t b) const {
    return data(q, s)[edge_slot(q, a, b)];
  }
  Cell triangle(std::size_t q, std::uint32_t s, std::size_t a, std::size_t b, std::size_t c) const {
    return data(q, s)[triangle_slot(q, a, b, c)];
  }
  /// Id of the simplex with this data, or kNone.
  std::uint32_t find(std::size_t q, std::span<const std::uint32_t> data) const;

  /// d_i d_j = d_{j-1} d_i for i < j at every level; throws InvariantViolation.
  void check_face_identities() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept;
  };
  struct Level {
    std::size_t count = 0;
    std::vector<std::uint32_t> data;
    std::vector<std::uint32_t> faces;
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash> index;
  };

  void add(std::size_t q, std::vector<std::uint32_t> simplex, std::size_t cap);
  void compute_faces(std::size_t q);

  std::vector<Level> levels_;
};

}  // namespace gerbekit
