#include "gerbekit/linalg.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "gerbekit/error.hpp"

namespace gerbekit {

namespace {
constexpr std::uint32_t kNoRow = std::numeric_limits<std::uint32_t>::max();
}

void require_prime(std::uint32_t p) {
  bool prime = p >= 2 && p < 256;
  for (std::uint32_t d = 2; prime && d * d <= p; ++d) prime = p % d != 0;
  if (!prime) fail(ErrorKind::ParseError, "coefficient prime must be a prime below 256, got " + std::to_string(p));
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1;
  for (std::uint32_t e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

FpVector::FpVector(std::uint32_t p, std::size_t n) : p_(p), n_(n) {
  if (p == 2) {
    bits_.assign((n + 63) / 64, 0);
  } else {
    vals_.assign(n, 0);
  }
}

std::uint32_t FpVector::get(std::size_t i) const {
  if (p_ == 2) return (bits_[i / 64] >> (i % 64)) & 1;
  return vals_[i];
}

void FpVector::set(std::size_t i, std::uint32_t v) {
  v %= p_;
  if (p_ == 2) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    bits_[i / 64] = v ? (bits_[i / 64] | mask) : (bits_[i / 64] & ~mask);
  } else {
    vals_[i] = static_cast<std::uint8_t>(v);
  }
}

void FpVector::add(std::size_t i, std::int64_t v) {
  const auto p = static_cast<std::int64_t>(p_);
  set(i, static_cast<std::uint32_t>(((get(i) + v) % p + p) % p));
}

void FpVector::axpy(std::uint32_t a, const FpVector& x, std::size_t from) {
  a %= p_;
  if (a == 0) return;
  if (p_ == 2) {
    for (std::size_t w = from / 64; w < bits_.size(); ++w) bits_[w] ^= x.bits_[w];
    return;
  }
  for (std::size_t i = from; i < n_; ++i)
    if (x.vals_[i]) vals_[i] = static_cast<std::uint8_t>((vals_[i] + a * x.vals_[i]) % p_);
}

void FpVector::scale(std::uint32_t a) {
  a %= p_;
  if (p_ == 2) {
    if (a == 0) std::fill(bits_.begin(), bits_.end(), 0);
    return;
  }
  for (auto& v : vals_) v = static_cast<std::uint8_t>(v * a % p_);
}

std::size_t FpVector::first_nonzero(std::size_t from) const {
  if (p_ == 2) {
    for (std::size_t w = from / 64; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      if (w == from / 64) word &= ~std::uint64_t{0} << (from % 64);
      if (word) return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
    }
    return n_;
  }
  for (std::size_t i = from; i < n_; ++i)
    if (vals_[i]) return i;
  return n_;
}

std::uint32_t FpVector::dot(const FpVector& x) const {
  if (p_ == 2) {
    unsigned parity = 0;
    for (std::size_t w = 0; w < bits_.size(); ++w) parity ^= std::popcount(bits_[w] & x.bits_[w]) & 1;
    return parity;
  }
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += std::uint64_t{vals_[i]} * x.vals_[i];
  return static_cast<std::uint32_t>(s % p_);
}

Echelon::Echelon(std::uint32_t p, std::size_t n, std::size_t num_tags)
    : p_(p), n_(n), num_tags_(num_tags), pivot_row_(n, kNoRow) {
  require_prime(p);
}

std::vector<std::uint32_t> Echelon::reduce(FpVector& v) const {
  std::vector<std::uint32_t> tag(num_tags_, 0);
  for (std::size_t c = v.first_nonzero(); c < n_; c = v.first_nonzero(c + 1)) {
    const auto r = pivot_row_[c];
    if (r == kNoRow) continue;
    const std::uint32_t coef = v.get(c);
    v.axpy(p_ - coef, rows_[r], c);
    for (std::size_t k = 0; k < num_tags_; ++k) tag[k] = (tag[k] + coef * tags_[r][k]) % p_;
  }
  return tag;
}

bool Echelon::insert(FpVector v, std::vector<std::uint32_t> tag) {
  tag.resize(num_tags_, 0);
  auto sub = reduce(v);
  std::size_t lead = n_;
  for (std::size_t c = v.first_nonzero(); c < n_; c = v.first_nonzero(c + 1)) {
    if (pivot_row_[c] == kNoRow) {
      lead = c;
      break;
    }
  }
  if (lead == n_) return false;
  // reduce() cleared every pivot column, so the first nonzero is the lead.
  const std::uint32_t s = inverse_mod(v.get(lead), p_);
  v.scale(s);
  for (std::size_t k = 0; k < num_tags_; ++k) tag[k] = (tag[k] + p_ - sub[k]) % p_ * s % p_;
  pivot_row_[lead] = static_cast<std::uint32_t>(rows_.size());
  lead_.push_back(lead);
  rows_.push_back(std::move(v));
  tags_.push_back(std::move(tag));
  return true;
}

void Echelon::set_num_tags(std::size_t n) {
  num_tags_ = n;
  for (auto& t : tags_) t.resize(n, 0);
}

std::vector<FpVector> Echelon::kernel() const {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lead_[a] > lead_[b]; });
  std::vector<FpVector> out;
  for (std::size_t f = 0; f < n_; ++f) {
    if (pivot_row_[f] != kNoRow) continue;
    FpVector x(p_, n_);
    x.set(f, 1);
    // Pivot c only sees coordinates > c, all of which are already fixed.
    for (std::size_t r : order) {
      const std::uint32_t d = rows_[r].dot(x);
      x.set(lead_[r], (p_ - d) % p_);
    }
    out.push_back(std::move(x));
  }
  return out;
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::size_t FpMatrix::rank() const {
  Echelon e(p, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    FpVector v(p, cols);
    for (std::size_t j = 0; j < cols; ++j) v.set(j, at(i, j));
    e.insert(std::move(v));
  }
  return e.rank();
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  if (rows != cols) return std::nullopt;
  const std::size_t n = rows;
  FpMatrix w(p, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w.at(i, j) = at(i, j);
    w.at(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && w.at(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    for (std::size_t j = 0; j < 2 * n; ++j) std::swap(w.at(piv, j), w.at(c, j));
    const std::uint32_t s = inverse_mod(w.at(c, c), p);
    for (std::size_t j = 0; j < 2 * n; ++j) w.at(c, j) = w.at(c, j) * s % p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || w.at(r, c) == 0) continue;
      const std::uint32_t f = w.at(r, c);
      for (std::size_t j = 0; j < 2 * n; ++j) w.at(r, j) = (w.at(r, j) + (p - f) * w.at(c, j)) % p;
    }
  }
  FpMatrix inv(p, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = w.at(i, n + j);
  return inv;
}

std::vector<std::uint32_t> FpMatrix::apply(const std::vector<std::uint32_t>& v) const {
  std::vector<std::uint32_t> out(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < cols; ++j) s += std::uint64_t{at(i, j)} * v[j];
    out[i] = static_cast<std::uint32_t>(s % p);
  }
  return out;
}

bool FpMatrix::is_zero() const {
  for (auto x : a)
    if (x) return false;
  return true;
}

FpMatrix operator*(const FpMatrix& x, const FpMatrix& y) {
  if (x.cols != y.rows || x.p != y.p) fail(ErrorKind::DegreeOutOfRange, "matrix shapes do not compose");
  FpMatrix out(x.p, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const std::uint32_t a = x.at(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < y.cols; ++j) out.at(i, j) = (out.at(i, j) + a * y.at(k, j)) % x.p;
    }
  return out;
}

}  // namespace gerbekit
