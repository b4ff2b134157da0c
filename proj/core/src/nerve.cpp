#include "gerbekit/nerve.hpp"

#include "gerbekit/error.hpp"

namespace gerbekit {

namespace {

std::size_t choose2(std::size_t n) { return n * (n - 1) / 2; }
std::size_t choose3(std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

// Extends one q-simplex by a new last vertex.
class Extender {
 public:
  Extender(const TwoGroupoid& t, std::size_t q) : t_(t), q_(q), n_(q + 2) {}

  template <class Emit>
  void run(std::span<const std::uint32_t> base, Emit&& emit) {
    v_.assign(n_, kNone);
    e_.assign(n_ * n_, kNone);
    a_.assign(n_ * n_ * n_, kNone);
    for (std::size_t a = 0; a <= q_; ++a) v_[a] = base[a];
    for (std::size_t a = 0; a <= q_; ++a)
      for (std::size_t b = a + 1; b <= q_; ++b) E(a, b) = base[DeltaSet::edge_slot(q_, a, b)];
    for (std::size_t a = 0; a <= q_; ++a)
      for (std::size_t b = a + 1; b <= q_; ++b)
        for (std::size_t c = b + 1; c <= q_; ++c) A(a, b, c) = base[DeltaSet::triangle_slot(q_, a, b, c)];

    const std::size_t d = q_ + 1;
    for (Arr e : t_.one().arrows_from(v_[q_])) {
      v_[d] = t_.one().tgt(e);
      E(q_, d) = e;
      if (q_ == 0) {
        emit(pack());
        continue;
      }
      choose(static_cast<std::ptrdiff_t>(q_) - 1, emit);
    }
  }

 private:
  Arr& E(std::size_t a, std::size_t b) { return e_[a * n_ + b]; }
  Cell& A(std::size_t a, std::size_t b, std::size_t c) { return a_[(a * n_ + b) * n_ + c]; }
  Cell beta(std::size_t a, std::size_t b, std::size_t c) { return t_.whisker_right(A(a, b, c), E(a, b)); }

  bool tetrahedron(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    const Cell lhs = t_.vm(t_.whisker_right(beta(b, c, d), E(a, b)), beta(a, b, d));
    const Cell rhs = t_.vm(t_.whisker_left(E(c, d), beta(a, b, c)), beta(a, c, d));
    return lhs == rhs;
  }

  // Picks α_{a,q,d}, derives α_{a,b,d} for a < b < q, then recurses on a−1.
  template <class Emit>
  void choose(std::ptrdiff_t sa, Emit& emit) {
    if (sa < 0) {
      emit(pack());
      return;
    }
    const auto a = static_cast<std::size_t>(sa);
    const std::size_t q = q_, d = q_ + 1;
    const auto& one = t_.one();
    for (Cell alpha : t_.vert().arrows_into(E(q, d))) {
      A(a, q, d) = alpha;
      E(a, d) = one.comp(t_.l(alpha), E(a, q));
      bool ok = true;
      for (std::size_t b = a + 1; b < q && ok; ++b) {
        // Solve the (a,b,q,d) tetrahedron for β_abd.
        const Cell rhs = t_.vm(t_.whisker_left(E(q, d), beta(a, b, q)), beta(a, q, d));
        const Cell left = t_.whisker_right(beta(b, q, d), E(a, b));
        const Cell beta_abd = t_.vm(t_.vinv(left), rhs);
        A(a, b, d) = t_.whisker_right(beta_abd, one.inv(E(a, b)));
      }
      for (std::size_t b = a + 1; b < q && ok; ++b)
        for (std::size_t c = b + 1; c < q && ok; ++c) ok = tetrahedron(a, b, c, d);
      if (ok) choose(sa - 1, emit);
    }
  }

  std::vector<std::uint32_t> pack() const {
    const std::size_t m = q_ + 1;
    std::vector<std::uint32_t> out;
    out.reserve(DeltaSet::stride(m));
    for (std::size_t a = 0; a <= m; ++a) out.push_back(v_[a]);
    for (std::size_t a = 0; a <= m; ++a)
      for (std::size_t b = a + 1; b <= m; ++b) out.push_back(e_[a * n_ + b]);
    for (std::size_t a = 0; a <= m; ++a)
      for (std::size_t b = a + 1; b <= m; ++b)
        for (std::size_t c = b + 1; c <= m; ++c) out.push_back(a_[(a * n_ + b) * n_ + c]);
    return out;
  }

  const TwoGroupoid& t_;
  std::size_t q_, n_;
  std::vector<Obj> v_;
  std::vector<Arr> e_;
  std::vector<Cell> a_;
};

}  // namespace

std::size_t DeltaSet::KeyHash::operator()(const std::vector<std::uint32_t>& v) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : v) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::size_t DeltaSet::stride(std::size_t q) { return (q + 1) + choose2(q + 1) + choose3(q + 1); }

std::size_t DeltaSet::edge_slot(std::size_t q, std::size_t a, std::size_t b) {
  const std::size_t n = q + 1;
  // Pairs (a', b') with a' < a come first: Σ_{a'<a} (n−1−a').
  return n + a * (2 * n - a - 1) / 2 + (b - a - 1);
}

std::size_t DeltaSet::triangle_slot(std::size_t q, std::size_t a, std::size_t b, std::size_t c) {
  const std::size_t n = q + 1;
  std::size_t k = 0;
  for (std::size_t x = 0; x < a; ++x) k += choose2(n - 1 - x);
  for (std::size_t y = a + 1; y < b; ++y) k += n - 1 - y;
  k += c - b - 1;
  return n + choose2(n) + k;
}

void DeltaSet::add(std::size_t q, std::vector<std::uint32_t> simplex, std::size_t cap) {
  auto& level = levels_[q];
  if (level.count >= cap) {
    fail(ErrorKind::CapExceeded, "nerve level " + std::to_string(q) + " exceeds " + std::to_string(cap) + " simplices");
  }
  level.data.insert(level.data.end(), simplex.begin(), simplex.end());
  level.index.emplace(std::move(simplex), static_cast<std::uint32_t>(level.count));
  ++level.count;
}

std::uint32_t DeltaSet::find(std::size_t q, std::span<const std::uint32_t> data) const {
  std::vector<std::uint32_t> key(data.begin(), data.end());
  auto it = levels_[q].index.find(key);
  return it == levels_[q].index.end() ? kNone : it->second;
}

void DeltaSet::compute_faces(std::size_t q) {
  auto& level = levels_[q];
  level.faces.resize(level.count * (q + 1));
  std::vector<std::uint32_t> face(stride(q - 1));
  for (std::uint32_t s = 0; s < level.count; ++s) {
    const auto full = data(q, s);
    for (std::size_t i = 0; i <= q; ++i) {
      auto up = [i](std::size_t x) { return x < i ? x : x + 1; };
      std::size_t k = 0;
      for (std::size_t a = 0; a < q; ++a) face[k++] = full[up(a)];
      for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = a + 1; b < q; ++b) face[k++] = full[edge_slot(q, up(a), up(b))];
      for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = a + 1; b < q; ++b)
          for (std::size_t c = b + 1; c < q; ++c) face[k++] = full[triangle_slot(q, up(a), up(b), up(c))];
      const auto id = find(q - 1, face);
      if (id == kNone) fail(ErrorKind::InvariantViolation, "face of a simplex is missing from the nerve");
      level.faces[std::size_t{s} * (q + 1) + i] = id;
    }
  }
}

DeltaSet DeltaSet::nerve(const TwoGroupoid& t, std::size_t max_dim, std::size_t cap) {
  if (max_dim > kMaxNerveDim) {
    fail(ErrorKind::DimensionCapExceeded,
         "nerve dimension " + std::to_string(max_dim) + " exceeds " + std::to_string(kMaxNerveDim));
  }
  DeltaSet n;
  n.levels_.resize(max_dim + 1);
  for (Obj o = 0; o < t.num_objects(); ++o) n.add(0, {o}, cap);
  for (std::size_t q = 0; q < max_dim; ++q) {
    Extender ext(t, q);
    for (std::uint32_t s = 0; s < n.size(q); ++s) {
      std::vector<std::uint32_t> base(n.data(q, s).begin(), n.data(q, s).end());
      ext.run(base, [&](std::vector<std::uint32_t> simplex) { n.add(q + 1, std::move(simplex), cap); });
    }
    n.compute_faces(q + 1);
  }
  return n;
}

void DeltaSet::check_face_identities() const {
  for (std::size_t q = 2; q <= max_dim(); ++q)
    for (std::uint32_t s = 0; s < size(q); ++s)
      for (std::size_t j = 1; j <= q; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          if (face(q - 1, i, face(q, j, s)) != face(q - 1, j - 1, face(q, i, s))) {
            fail(ErrorKind::InvariantViolation, "d" + std::to_string(i) + "d" + std::to_string(j) + " ≠ d" +
                                                    std::to_string(j - 1) + "d" + std::to_string(i) + " on N" +
                                                    std::to_string(q) + " simplex " + std::to_string(s));
          }
        }
}

}  // namespace gerbekit
