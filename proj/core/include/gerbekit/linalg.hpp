#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace gerbekit {

/// Throws ParseError unless p is a prime below 256.
void require_prime(std::uint32_t p);
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Dense vector over F_p; bit-packed when p = 2.
class FpVector {
 public:
  FpVector() = default;
  FpVector(std::uint32_t p, std::size_t n);

  std::uint32_t prime() const noexcept { return p_; }
  std::size_t size() const noexcept { return n_; }
  std::uint32_t get(std::size_t i) const;
  void set(std::size_t i, std::uint32_t v);
  void add(std::size_t i, std::int64_t v);

  /// this += a·x on coordinates ≥ from.
  void axpy(std::uint32_t a, const FpVector& x, std::size_t from = 0);
  void scale(std::uint32_t a);
  /// First nonzero coordinate at or after from, or size().
  std::size_t first_nonzero(std::size_t from = 0) const;
  bool is_zero() const { return first_nonzero() == n_; }
  std::uint32_t dot(const FpVector& x) const;

  bool operator==(const FpVector&) const = default;

 private:
  std::uint32_t p_ = 2;
  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> vals_;
};

/// Row echelon form built by insertion. Each stored row carries a tag vector
/// recording which combination of tagged inputs it came from.
class Echelon {
 public:
  Echelon(std::uint32_t p, std::size_t n, std::size_t num_tags = 0);

  /// Subtracts pivot rows from v until no pivot column is nonzero; returns the
  /// tag combination that was subtracted.
  std::vector<std::uint32_t> reduce(FpVector& v) const;
  /// True if v was independent of the rows so far.
  bool insert(FpVector v, std::vector<std::uint32_t> tag = {});

  /// Widens every tag with zeros.
  void set_num_tags(std::size_t n);

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t width() const noexcept { return n_; }
  std::uint32_t prime() const noexcept { return p_; }
  /// Basis of {x : r·x = 0 for every inserted row r}, one vector per free
  /// column in increasing order.
  std::vector<FpVector> kernel() const;

 private:
  std::uint32_t p_;
  std::size_t n_, num_tags_;
  std::vector<FpVector> rows_;
  std::vector<std::vector<std::uint32_t>> tags_;
  std::vector<std::uint32_t> pivot_row_;  // per column, or UINT32_MAX
  std::vector<std::size_t> lead_;
};

/// Small dense matrix over F_p acting on column vectors.
struct FpMatrix {
  std::uint32_t p = 2;
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint32_t> a;

  FpMatrix() = default;
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols) : p(p), rows(rows), cols(cols), a(rows * cols, 0) {}
  static FpMatrix identity(std::uint32_t p, std::size_t n);

  std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  std::size_t rank() const;
  std::optional<FpMatrix> inverse() const;
  std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& v) const;
  bool is_zero() const;

  bool operator==(const FpMatrix&) const = default;
};

FpMatrix operator*(const FpMatrix& x, const FpMatrix& y);

}  // namespace gerbekit
