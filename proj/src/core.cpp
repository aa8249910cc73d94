#include "superpose/core.hpp"

#include <algorithm>
#include <cmath>

namespace superpose {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Degenerate: return "degenerate input";
    case ErrorKind::Singular: return "singular input";
    case ErrorKind::Construction: return "construction failure";
    case ErrorKind::Guard: return "enumeration guard";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::Contract: return "contract violation";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Io: return "io error";
  }
  return "error";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    fail(ErrorKind::Dimension, "matrix " + shape() + " needs " + std::to_string(rows_ * cols_) +
                                   " entries, got " + std::to_string(data_.size()));
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!std::isfinite(data_[i]))
      fail(ErrorKind::Parameter, "non-finite entry at (" + std::to_string(i / cols_) + ", " +
                                     std::to_string(i % cols_) + ")");
}

Matrix Matrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return Matrix(n, n, std::move(e));
}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols) {
  return Matrix(rows, cols, std::vector<double>(rows * cols, 0.0));
}

Matrix Matrix::from_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) return Matrix();
  const std::size_t rows = columns.front().size();
  const std::size_t cols = columns.size();
  std::vector<double> e(rows * cols);
  for (std::size_t c = 0; c < cols; ++c) {
    if (columns[c].size() != rows)
      fail(ErrorKind::Dimension, "column " + std::to_string(c) + " has length " +
                                     std::to_string(columns[c].size()) + ", expected " + std::to_string(rows));
    for (std::size_t r = 0; r < rows; ++r) e[r * cols + c] = columns[c][r];
  }
  return Matrix(rows, cols, std::move(e));
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = data_[r * cols_ + c];
  return out;
}

Matrix Matrix::transposed() const {
  std::vector<double> e(data_.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) e[c * rows_ + r] = data_[r * cols_ + c];
  return Matrix(cols_, rows_, std::move(e));
}

std::string Matrix::shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

SparseVector::SparseVector(std::size_t dim, std::vector<std::size_t> support, std::vector<double> values,
                           SparseMode mode)
    : dim_(dim), support_(std::move(support)), values_(std::move(values)), mode_(mode) {
  if (support_.size() != values_.size())
    fail(ErrorKind::Dimension, "support and values differ in length");
  if (support_.size() > dim_) fail(ErrorKind::Dimension, "support larger than dimension");
  for (std::size_t t = 0; t < support_.size(); ++t) {
    if (support_[t] >= dim_) fail(ErrorKind::Parameter, "support index " + std::to_string(support_[t]) + " out of range");
    if (t > 0 && support_[t] <= support_[t - 1])
      fail(ErrorKind::Parameter, "support must be strictly increasing");
    const double v = values_[t];
    if (mode_ == SparseMode::Binary) {
      if (v != 1.0) fail(ErrorKind::Parameter, "binary sparse vectors store only ones");
    } else if (!(v >= -1.0 && v <= 1.0)) {
      fail(ErrorKind::Parameter, "value at index " + std::to_string(support_[t]) + " outside [-1, 1]");
    }
  }
}

SparseVector SparseVector::binary(std::size_t dim, std::vector<std::size_t> support) {
  std::vector<double> ones(support.size(), 1.0);
  return SparseVector(dim, std::move(support), std::move(ones), SparseMode::Binary);
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dim_, 0.0);
  for (std::size_t t = 0; t < support_.size(); ++t) out[support_[t]] = values_[t];
  return out;
}

Matrix gram(const Matrix& b, const Matrix& a) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Dimension, "gram needs equal shapes, got B " + b.shape() + " and A " + a.shape());
  const std::size_t d = a.rows();
  const std::size_t m = a.cols();
  std::vector<double> c(m * m, 0.0);
  // Row-outer accumulation: every C[i][j] still sums over r = 0..d-1 in order.
  for (std::size_t r = 0; r < d; ++r) {
    const double* arow = a.row(r).data();
    const double* brow = b.row(r).data();
    for (std::size_t i = 0; i < m; ++i) {
      const double bi = brow[i];
      double* ci = c.data() + i * m;
      for (std::size_t j = 0; j < m; ++j) ci[j] += bi * arow[j];
    }
  }
  return Matrix(m, m, std::move(c));
}

CoherenceSummary coherence(const Matrix& c) {
  if (c.rows() != c.cols()) fail(ErrorKind::Dimension, "coherence needs a square matrix, got " + c.shape());
  const std::size_t m = c.rows();
  if (m < 2) fail(ErrorKind::Degenerate, "coherence needs at least 2 columns, got " + std::to_string(m));
  CoherenceSummary s;
  s.diag_min = s.diag_max = c(0, 0);
  s.mu = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    s.diag_min = std::min(s.diag_min, c(i, i));
    s.diag_max = std::max(s.diag_max, c(i, i));
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double v = std::abs(c(i, j));
      if (v > s.mu) {
        s.mu = v;
        s.argmax_pair = {i, j};
      }
    }
  }
  return s;
}

std::vector<double> column_norms(const Matrix& m) {
  std::vector<double> sq(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) sq[c] += row[c] * row[c];
  }
  for (auto& v : sq) v = std::sqrt(v);
  return sq;
}

Matrix normalize_columns(const Matrix& m) {
  const auto norms = column_norms(m);
  for (std::size_t c = 0; c < norms.size(); ++c)
    if (norms[c] == 0.0) fail(ErrorKind::Singular, "cannot normalize zero column " + std::to_string(c));
  std::vector<double> e(m.entries().begin(), m.entries().end());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e[r * m.cols() + c] /= norms[c];
  return Matrix(m.rows(), m.cols(), std::move(e));
}

bool is_incoherent(const Matrix& m, double mu, double diag_tol) {
  const Matrix c = gram(m, m);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    if (std::abs(c(i, i) - 1.0) > diag_tol) return false;
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (i != j && !(std::abs(c(i, j)) < mu)) return false;
  }
  return true;
}

std::vector<double> multiply(const Matrix& m, std::span<const double> x) {
  if (x.size() != m.cols())
    fail(ErrorKind::Dimension, "vector of length " + std::to_string(x.size()) + " does not match " + m.shape());
  std::vector<double> y(m.rows(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) y[r] = dot(m.row(r), x);
  return y;
}

std::vector<double> multiply(const Matrix& m, const SparseVector& z) {
  if (z.dim() != m.cols())
    fail(ErrorKind::Dimension, "sparse vector of dimension " + std::to_string(z.dim()) + " does not match " + m.shape());
  std::vector<double> y(m.rows(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t t = 0; t < z.nnz(); ++t) y[r] += m(r, z.support()[t]) * z.values()[t];
  return y;
}

double dot(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) fail(ErrorKind::Dimension, "dot of vectors with different lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm2(std::span<const double> u) { return std::sqrt(dot(u, u)); }

}  // namespace superpose
