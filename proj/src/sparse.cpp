#include "micropolar/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace micropolar {

std::size_t SparsityPattern::find(std::size_t row, std::size_t col) const {
  const auto begin = columns.begin() + static_cast<std::ptrdiff_t>(row_offsets[row]);
  const auto end = columns.begin() + static_cast<std::ptrdiff_t>(row_offsets[row + 1]);
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return npos;
  return static_cast<std::size_t>(it - columns.begin());
}

void SparsityPattern::check() const {
  if (row_offsets.size() != n_rows + 1 || row_offsets.front() != 0 ||
      row_offsets.back() != columns.size())
    throw std::logic_error("SparsityPattern: inconsistent row offsets");
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (row_offsets[r] > row_offsets[r + 1])
      throw std::logic_error("SparsityPattern: offsets not monotone");
    for (std::size_t k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
      if (columns[k] >= n_cols) throw std::logic_error("SparsityPattern: column out of range");
      if (k > row_offsets[r] && columns[k] <= columns[k - 1])
        throw std::logic_error("SparsityPattern: columns not sorted/unique");
    }
  }
}

std::shared_ptr<const SparsityPattern> SparsityPattern::from_rows(
    std::size_t n_cols, std::vector<std::vector<std::size_t>> rows) {
  auto p = std::make_shared<SparsityPattern>();
  p->n_rows = rows.size();
  p->n_cols = n_cols;
  p->row_offsets.assign(rows.size() + 1, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto& row = rows[r];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    p->row_offsets[r + 1] = p->row_offsets[r] + row.size();
  }
  p->columns.reserve(p->row_offsets.back());
  for (auto& row : rows) {
    p->columns.insert(p->columns.end(), row.begin(), row.end());
    std::vector<std::size_t>().swap(row);
  }
  return p;
}

CsrMatrix::CsrMatrix(std::shared_ptr<const SparsityPattern> pattern)
    : pattern_(std::move(pattern)), values_(pattern_->nnz(), 0.0) {}

double CsrMatrix::operator()(std::size_t row, std::size_t col) const {
  const std::size_t k = pattern_->find(row, col);
  return k == SparsityPattern::npos ? 0.0 : values_[k];
}

void CsrMatrix::add(std::size_t row, std::size_t col, double v) {
  const std::size_t k = pattern_->find(row, col);
  if (k == SparsityPattern::npos) throw std::out_of_range("CsrMatrix::add: entry not in pattern");
  values_[k] += v;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const auto& off = pattern_->row_offsets;
  const auto& col = pattern_->columns;
  for (std::size_t r = 0; r < rows(); ++r) {
    double s = 0.0;
    for (std::size_t k = off[r]; k < off[r + 1]; ++k) s += values_[k] * x[col[k]];
    y[r] = s;
  }
}

std::vector<double> CsrMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(rows());
  multiply(x, y);
  return y;
}

void CsrMatrix::multiply_transpose(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  const auto& off = pattern_->row_offsets;
  const auto& col = pattern_->columns;
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t k = off[r]; k < off[r + 1]; ++k) y[col[k]] += values_[k] * x[r];
}

CsrMatrix CsrMatrix::transpose() const {
  auto p = std::make_shared<SparsityPattern>();
  p->n_rows = cols();
  p->n_cols = rows();
  p->row_offsets.assign(cols() + 1, 0);
  for (std::size_t c : pattern_->columns) ++p->row_offsets[c + 1];
  for (std::size_t r = 0; r < cols(); ++r) p->row_offsets[r + 1] += p->row_offsets[r];
  p->columns.resize(nnz());
  std::vector<double> vals(nnz());
  std::vector<std::size_t> next(p->row_offsets.begin(), p->row_offsets.end() - 1);
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t k = pattern_->row_offsets[r]; k < pattern_->row_offsets[r + 1]; ++k) {
      const std::size_t dst = next[pattern_->columns[k]]++;
      p->columns[dst] = r;
      vals[dst] = values_[k];
    }
  CsrMatrix t(std::move(p));
  t.values_ = std::move(vals);
  return t;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(std::min(rows(), cols()), 0.0);
  for (std::size_t r = 0; r < d.size(); ++r) d[r] = (*this)(r, r);
  return d;
}

void CsrMatrix::scale(double a) {
  for (double& v : values_) v *= a;
}

void CsrMatrix::add_scaled(double a, const CsrMatrix& other) {
  if (pattern_ != other.pattern_)
    throw std::invalid_argument("CsrMatrix::add_scaled: patterns differ");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * other.values_[k];
}

void CsrMatrix::share_pattern_with(const CsrMatrix& other) {
  if (pattern_ == other.pattern_) return;
  const auto& a = *pattern_;
  const auto& b = *other.pattern_;
  if (a.n_rows != b.n_rows || a.n_cols != b.n_cols || a.row_offsets != b.row_offsets ||
      a.columns != b.columns)
    throw std::invalid_argument("CsrMatrix::share_pattern_with: patterns differ");
  pattern_ = other.pattern_;
}

CsrMatrix block_diagonal(const CsrMatrix& block, int copies) {
  if (block.rows() != block.cols()) throw std::invalid_argument("block_diagonal: block not square");
  const std::size_t n = block.rows();
  const auto nc = static_cast<std::size_t>(copies);
  auto p = std::make_shared<SparsityPattern>();
  p->n_rows = p->n_cols = n * nc;
  p->row_offsets.reserve(n * nc + 1);
  p->row_offsets.push_back(0);
  p->columns.reserve(block.nnz() * nc);
  std::vector<double> vals;
  vals.reserve(block.nnz() * nc);
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t col : block.row_columns(r)) p->columns.push_back(col + c * n);
      const auto rv = block.row_values(r);
      vals.insert(vals.end(), rv.begin(), rv.end());
      p->row_offsets.push_back(p->columns.size());
    }
  CsrMatrix m(std::move(p));
  m.values() = std::move(vals);
  return m;
}

double max_abs_difference(const CsrMatrix& a, const CsrMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_difference: dimension mismatch");
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto ca = a.row_columns(r), cb = b.row_columns(r);
    const auto va = a.row_values(r), vb = b.row_values(r);
    std::size_t i = 0, j = 0;
    while (i < ca.size() || j < cb.size()) {
      if (j == cb.size() || (i < ca.size() && ca[i] < cb[j])) {
        m = std::max(m, std::abs(va[i++]));
      } else if (i == ca.size() || cb[j] < ca[i]) {
        m = std::max(m, std::abs(vb[j++]));
      } else {
        m = std::max(m, std::abs(va[i++] - vb[j++]));
      }
    }
  }
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace micropolar
