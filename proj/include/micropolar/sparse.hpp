/// @file sparse.hpp
/// @brief Compressed sparse row storage with a shareable sparsity pattern.
///
/// Matrices assembled on the same pair of spaces share one immutable
/// SparsityPattern, so linear combinations are plain value-array updates.
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace micropolar {

struct SparsityPattern {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::size_t> row_offsets;  ///< size n_rows + 1, monotone
  std::vector<std::size_t> columns;      ///< sorted and unique within each row

  std::size_t nnz() const { return columns.size(); }
  /// Position of (row, col) in the value array, or npos if not stored.
  std::size_t find(std::size_t row, std::size_t col) const;
  /// Throws std::logic_error if the CSR invariants do not hold.
  void check() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Builds a pattern from unsorted per-row column lists.
  static std::shared_ptr<const SparsityPattern> from_rows(
      std::size_t n_cols, std::vector<std::vector<std::size_t>> rows);
};

class CsrMatrix {
 public:
  CsrMatrix() = default;
  explicit CsrMatrix(std::shared_ptr<const SparsityPattern> pattern);

  std::size_t rows() const { return pattern_ ? pattern_->n_rows : 0; }
  std::size_t cols() const { return pattern_ ? pattern_->n_cols : 0; }
  std::size_t nnz() const { return values_.size(); }

  const SparsityPattern& pattern() const { return *pattern_; }
  const std::shared_ptr<const SparsityPattern>& shared_pattern() const { return pattern_; }
  std::span<const std::size_t> row_columns(std::size_t r) const {
    return {pattern_->columns.data() + pattern_->row_offsets[r],
            pattern_->row_offsets[r + 1] - pattern_->row_offsets[r]};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values_.data() + pattern_->row_offsets[r],
            pattern_->row_offsets[r + 1] - pattern_->row_offsets[r]};
  }
  std::span<double> row_values(std::size_t r) {
    return {values_.data() + pattern_->row_offsets[r],
            pattern_->row_offsets[r + 1] - pattern_->row_offsets[r]};
  }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  /// Entry (row, col); zero when not stored.
  double operator()(std::size_t row, std::size_t col) const;
  /// Throws std::out_of_range if (row, col) is not in the pattern.
  void add(std::size_t row, std::size_t col, double v);

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;
  /// y = A^T x
  void multiply_transpose(std::span<const double> x, std::span<double> y) const;

  CsrMatrix transpose() const;
  double max_abs() const;
  std::vector<double> diagonal() const;
  void scale(double a);
  /// this += a * other; both matrices must share one pattern object.
  void add_scaled(double a, const CsrMatrix& other);
  /// Adopts `other`'s pattern object. Throws std::invalid_argument unless the
  /// two patterns are structurally identical.
  void share_pattern_with(const CsrMatrix& other);

 private:
  std::shared_ptr<const SparsityPattern> pattern_;
  std::vector<double> values_;
};

/// Block-diagonal matrix with `copies` copies of a square block.
CsrMatrix block_diagonal(const CsrMatrix& block, int copies);

/// max_ij |A_ij - B_ij| over the union of both patterns.
double max_abs_difference(const CsrMatrix& a, const CsrMatrix& b);

// Dense vector helpers used by the solvers.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// y += a x
void axpy(double a, std::span<const double> x, std::span<double> y);

}  // namespace micropolar
