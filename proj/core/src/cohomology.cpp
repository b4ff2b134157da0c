#include "gerbekit/cohomology.hpp"

#include <algorithm>

#include "gerbekit/error.hpp"

namespace gerbekit {

FpComplex::FpComplex(const DeltaSet& n, std::uint32_t p) : p_(p) {
  require_prime(p);
  for (std::size_t q = 0; q <= n.max_dim(); ++q) dims_.push_back(n.size(q));
  entries_.resize(n.max_dim());
  offsets_.resize(n.max_dim());
  for (std::size_t q = 0; q < n.max_dim(); ++q) {
    auto& entries = entries_[q];
    auto& offsets = offsets_[q];
    offsets.push_back(0);
    std::vector<Entry> row;
    for (std::uint32_t tau = 0; tau < n.size(q + 1); ++tau) {
      row.clear();
      for (std::size_t i = 0; i <= q + 1; ++i) {
        const std::uint32_t sign = i % 2 == 0 ? 1 : p - 1;
        const std::uint32_t sigma = n.face(q + 1, i, tau);
        auto it = std::find_if(row.begin(), row.end(), [&](const Entry& e) { return e.col == sigma; });
        if (it == row.end()) {
          row.push_back({sigma, sign % p});
        } else {
          it->coef = (it->coef + sign) % p;
        }
      }
      for (const auto& e : row)
        if (e.coef) entries.push_back(e);
      offsets.push_back(entries.size());
    }
  }
  // δ_{q+1} ∘ δ_q = 0.
  for (std::size_t q = 0; q + 1 < n.max_dim(); ++q) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> acc;
    for (std::uint32_t rho = 0; rho < n.size(q + 2); ++rho) {
      acc.clear();
      for (const auto& outer : row(q + 1, rho))
        for (const auto& inner : row(q, outer.col)) acc.emplace_back(inner.col, outer.coef * inner.coef % p);
      std::sort(acc.begin(), acc.end());
      for (std::size_t k = 0; k < acc.size();) {
        std::uint32_t sum = 0;
        std::size_t j = k;
        for (; j < acc.size() && acc[j].first == acc[k].first; ++j) sum = (sum + acc[j].second) % p;
        if (sum) fail(ErrorKind::InvariantViolation, "δ² ≠ 0 at N" + std::to_string(q + 2) + " simplex " + std::to_string(rho));
        k = j;
      }
    }
  }
}

std::span<const FpComplex::Entry> FpComplex::row(std::size_t q, std::uint32_t tau) const {
  const auto& o = offsets_[q];
  return {entries_[q].data() + o[tau], o[tau + 1] - o[tau]};
}

FpVector FpComplex::apply(std::size_t q, const FpVector& c) const {
  if (q >= entries_.size()) fail(ErrorKind::DegreeOutOfRange, "δ_" + std::to_string(q) + " is not built");
  FpVector out(p_, dims_[q + 1]);
  for (std::uint32_t tau = 0; tau < dims_[q + 1]; ++tau) {
    std::uint32_t s = 0;
    for (const auto& e : row(q, tau)) s = (s + e.coef * c.get(e.col)) % p_;
    out.set(tau, s);
  }
  return out;
}

bool FpComplex::is_cocycle(std::size_t q, const FpVector& c) const { return apply(q, c).is_zero(); }

Cohomology::Cohomology(const FpComplex& c, std::size_t q) : q_(q), p_(c.prime()), reduced_(c.prime(), 0) {
  if (q >= c.max_dim()) {
    fail(ErrorKind::DegreeOutOfRange, "H^" + std::to_string(q) + " needs the nerve up to dimension " +
                                          std::to_string(q + 1) + ", built to " + std::to_string(c.max_dim()));
  }
  const std::size_t n = c.dim(q);
  Echelon rows(p_, n);
  for (std::uint32_t tau = 0; tau < c.dim(q + 1) && rows.rank() < n; ++tau) {
    FpVector v(p_, n);
    for (const auto& e : c.row(q, tau)) v.set(e.col, e.coef);
    rows.insert(std::move(v));
  }
  const auto cocycles = rows.kernel();

  Echelon span(p_, n);
  if (q > 0) {
    std::vector<FpVector> columns(c.dim(q - 1), FpVector(p_, n));
    for (std::uint32_t tau = 0; tau < n; ++tau)
      for (const auto& e : c.row(q - 1, tau)) columns[e.col].set(tau, e.coef);
    for (auto& col : columns) span.insert(std::move(col));
  }
  reduced_ = span;
  for (const auto& z : cocycles)
    if (span.insert(z)) basis_.push_back(z);
  reduced_.set_num_tags(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    std::vector<std::uint32_t> tag(basis_.size(), 0);
    tag[k] = 1;
    reduced_.insert(basis_[k], std::move(tag));
  }
}

std::vector<std::uint32_t> Cohomology::coordinates(const FpVector& z) const {
  FpVector v = z;
  auto tag = reduced_.reduce(v);
  if (!v.is_zero()) fail(ErrorKind::InvariantViolation, "cochain is not a cocycle in degree " + std::to_string(q_));
  return tag;
}

bool CohClass::is_zero() const {
  return std::all_of(coordinates.begin(), coordinates.end(), [](std::uint32_t x) { return x == 0; });
}

const Cohomology& NerveCohomology::operator[](std::size_t q) const {
  if (q >= h.size()) fail(ErrorKind::DegreeOutOfRange, "degree " + std::to_string(q) + " was not computed");
  return h[q];
}

NerveCohomology nerve_cohomology(const TwoGroupoid& t, std::size_t max_degree, std::uint32_t p, std::size_t cap) {
  require_prime(p);
  if (max_degree + 1 > kMaxNerveDim) {
    fail(ErrorKind::DimensionCapExceeded, "H^" + std::to_string(max_degree) + " needs N" +
                                              std::to_string(max_degree + 1) + ", above the cap " +
                                              std::to_string(kMaxNerveDim));
  }
  NerveCohomology out{DeltaSet::nerve(t, max_degree + 1, cap), nullptr, {}};
  out.complex = std::make_unique<FpComplex>(out.nerve, p);
  for (std::size_t q = 0; q <= max_degree; ++q) out.h.emplace_back(*out.complex, q);
  return out;
}

std::vector<std::uint32_t> simplex_map(const DeltaSet& dom, const DeltaSet& cod, const TwoMorphism& f, std::size_t q) {
  const std::size_t n = q + 1;
  const std::size_t edges_end = n + n * (n - 1) / 2;
  std::vector<std::uint32_t> out(dom.size(q));
  std::vector<std::uint32_t> image(DeltaSet::stride(q));
  for (std::uint32_t s = 0; s < dom.size(q); ++s) {
    const auto d = dom.data(q, s);
    for (std::size_t k = 0; k < d.size(); ++k) image[k] = k < n ? f.f0[d[k]] : k < edges_end ? f.f1[d[k]] : f.f2[d[k]];
    out[s] = cod.find(q, image);
    if (out[s] == kNone) fail(ErrorKind::InvariantViolation, "image of a simplex is not in the target nerve");
  }
  return out;
}

namespace {

FpVector pull_cochain(const std::vector<std::uint32_t>& map, const FpVector& c) {
  FpVector out(c.prime(), map.size());
  for (std::size_t s = 0; s < map.size(); ++s) out.set(s, c.get(map[s]));
  return out;
}

}  // namespace

FpMatrix induced_map(const NerveCohomology& dom, const NerveCohomology& cod, const TwoMorphism& f, std::size_t q) {
  const auto& hd = dom[q];
  const auto& hc = cod[q];
  const auto map = simplex_map(dom.nerve, cod.nerve, f, q);
  FpMatrix m(hd.prime(), hd.dimension(), hc.dimension());
  for (std::size_t k = 0; k < hc.dimension(); ++k) {
    const auto coords = hd.coordinates(pull_cochain(map, hc.basis()[k]));
    for (std::size_t i = 0; i < coords.size(); ++i) m.at(i, k) = coords[i];
  }
  return m;
}

FpMatrix induced_map(const TwoGroupoid& dom, const TwoGroupoid& cod, const TwoMorphism& f, std::size_t q,
                     std::uint32_t p) {
  validate_two_morphism(dom, cod, f);
  return induced_map(nerve_cohomology(dom, q, p), nerve_cohomology(cod, q, p), f, q);
}

CohClass pull_back(const NerveCohomology& dom, const NerveCohomology& cod, const TwoMorphism& f, const CohClass& c) {
  CohClass out;
  out.degree = c.degree;
  out.p = c.p;
  out.representative = pull_cochain(simplex_map(dom.nerve, cod.nerve, f, c.degree), c.representative);
  out.coordinates = dom[c.degree].coordinates(out.representative);
  return out;
}

FpMatrix characteristic_map(const NerveCohomology& base, const NerveCohomology& apex, const NerveCohomology& target,
                            const Span& s, std::size_t q) {
  const auto phi = induced_map(apex, base, s.left, q);
  const auto f = induced_map(apex, target, s.right, q);
  auto inv = phi.inverse();
  if (!inv) {
    fail(ErrorKind::MoritaMapNotInvertible, "left leg induces a " + std::to_string(phi.rows) + "×" +
                                                std::to_string(phi.cols) + " map of rank " +
                                                std::to_string(phi.rank()) + " in degree " + std::to_string(q));
  }
  return *inv * f;
}

FpMatrix characteristic_map(const Span& s, std::size_t q, std::uint32_t p) {
  return characteristic_map(nerve_cohomology(*s.base, q, p), nerve_cohomology(*s.apex, q, p),
                            nerve_cohomology(*s.target, q, p), s, q);
}

void validate_character(const FiniteGroup& g, const std::vector<std::uint32_t>& chi, std::uint32_t p) {
  if (chi.size() != g.order()) fail(ErrorKind::NotACharacter, "character has the wrong length");
  for (Elem a = 0; a < g.order(); ++a) {
    if (chi[a] >= p) fail(ErrorKind::NotACharacter, "value out of range at " + g.name(a));
    for (Elem b = 0; b < g.order(); ++b)
      if (chi[g.mul(a, b)] != (chi[a] + chi[b]) % p) {
        fail(ErrorKind::NotACharacter, "χ(" + g.name(a) + "·" + g.name(b) + ") ≠ χ(" + g.name(a) + ")+χ(" +
                                           g.name(b) + ")");
      }
  }
}

namespace {

CohClass class_of(const NerveCohomology& nc, std::size_t q, FpVector representative) {
  CohClass out;
  out.degree = q;
  out.p = representative.prime();
  out.coordinates = nc[q].coordinates(representative);
  out.representative = std::move(representative);
  return out;
}

}  // namespace

CohClass canonical_class(const NerveCohomology& a_one, const FiniteGroup& A, const std::vector<std::uint32_t>& chi) {
  const auto p = a_one.complex->prime();
  validate_character(A, chi, p);
  const auto& n = a_one.nerve;
  if (n.size(0) != 1 || n.size(1) != 1 || n.size(2) != A.order()) {
    fail(ErrorKind::IncompatibleSpans, "nerve is not that of [A → 1]");
  }
  FpVector c(p, n.size(2));
  // Cells of [A → 1] are numbered by the elements of A.
  for (std::uint32_t s = 0; s < n.size(2); ++s) c.set(s, chi[n.triangle(2, s, 0, 1, 2)]);
  return class_of(a_one, 2, std::move(c));
}

CohClass canonical_class(const FiniteGroup& A, const std::vector<std::uint32_t>& chi, std::uint32_t p) {
  auto t = cm_to_two_groupoid(abelian_crossed_module(A));
  return canonical_class(nerve_cohomology(t.two, 2, p), A, chi);
}

std::vector<Arr> first_section(const GExtension& e) {
  std::vector<Arr> out(e.base.num_arrows(), kNone);
  for (Arr x = 0; x < e.tilde.num_arrows(); ++x)
    if (out[e.phi.f1[x]] == kNone) out[e.phi.f1[x]] = x;
  for (Obj m = 0; m < e.num_objects(); ++m) out[e.base.idn(m)] = e.tilde.idn(m);
  return out;
}

FpVector section_cocycle(const DeltaSet& base, const GExtension& e, const std::vector<Arr>& section,
                         const std::vector<std::uint32_t>& chi, std::uint32_t p) {
  const auto& t = e.tilde;
  FpVector c(p, base.size(2));
  for (std::uint32_t s = 0; s < base.size(2); ++s) {
    const Arr g1 = base.edge(2, s, 0, 1), g2 = base.edge(2, s, 1, 2), g21 = base.edge(2, s, 0, 2);
    const Arr lhs = t.comp(section[g2], section[g1]);
    const Elem k = e.kernel_element(t.comp(lhs, t.inv(section[g21])));
    if (k == kNone) fail(ErrorKind::InvariantViolation, "section does not cover the base");
    c.set(s, chi[k]);
  }
  return c;
}

namespace {

void require_central_abelian(const GExtension& e) {
  const auto& G = e.G;
  for (Elem a = 0; a < G.order(); ++a)
    for (Elem b = 0; b < G.order(); ++b)
      if (G.mul(a, b) != G.mul(b, a)) fail(ErrorKind::NotAbelianKernel, G.name(a) + " and " + G.name(b) + " do not commute");
  const auto& t = e.tilde;
  for (Arr x = 0; x < t.num_arrows(); ++x)
    for (Elem g = 0; g < G.order(); ++g)
      if (t.comp(x, e.embed(t.src(x), g)) != t.comp(e.embed(t.tgt(x), g), x)) {
        fail(ErrorKind::NotCentral, "arrow " + t.arrow_names[x] + " does not commute with i(" + G.name(g) + ")");
      }
}

}  // namespace

CohClass extension_class(const NerveCohomology& base, const GExtension& e, const std::vector<std::uint32_t>& chi) {
  require_central_abelian(e);
  const auto p = base.complex->prime();
  validate_character(e.G, chi, p);
  if (base.nerve.size(1) != e.base.num_arrows()) fail(ErrorKind::IncompatibleSpans, "nerve is not that of the base");
  return class_of(base, 2, section_cocycle(base.nerve, e, first_section(e), chi, p));
}

CohClass extension_class(const GExtension& e, const std::vector<std::uint32_t>& chi, std::uint32_t p) {
  return extension_class(nerve_cohomology(as_two_groupoid(e.base), 2, p), e, chi);
}

SpanDistinguisher cohomology_distinguisher(std::size_t max_degree, std::uint32_t p) {
  return [max_degree, p](const Span& f, const Span& g) {
    try {
      const auto base = nerve_cohomology(*f.base, max_degree, p);
      const auto target = nerve_cohomology(*f.target, max_degree, p);
      const auto fa = nerve_cohomology(*f.apex, max_degree, p);
      const auto ga = nerve_cohomology(*g.apex, max_degree, p);
      for (std::size_t q = 0; q <= max_degree; ++q)
        if (!(characteristic_map(base, fa, target, f, q) == characteristic_map(base, ga, target, g, q))) return true;
    } catch (const Error&) {
      return false;
    }
    return false;
  };
}

}  // namespace gerbekit
