#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "superpose/error.hpp"

namespace superpose {

// Dense real matrix, row-major, immutable once built. Holds representation
// matrices A, probe matrices B and interference matrices C = B^T A.
class Matrix {
 public:
  Matrix() = default;
  // Throws Dimension on a size mismatch and Parameter on non-finite entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols);
  // Builds a rows x columns.size() matrix from column vectors.
  static Matrix from_columns(const std::vector<std::vector<double>>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::span<const double> entries() const noexcept { return data_; }
  std::span<const double> row(std::size_t r) const noexcept {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }
  std::vector<double> column(std::size_t c) const;
  Matrix transposed() const;
  std::string shape() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class SparseMode { Continuous, Binary };

// k-sparse feature vector z. Continuous mode values lie in [-1, 1]; binary
// mode stores only the active indices with value 1.
class SparseVector {
 public:
  SparseVector(std::size_t dim, std::vector<std::size_t> support, std::vector<double> values,
               SparseMode mode = SparseMode::Continuous);
  static SparseVector binary(std::size_t dim, std::vector<std::size_t> support);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return support_.size(); }
  SparseMode mode() const noexcept { return mode_; }
  const std::vector<std::size_t>& support() const noexcept { return support_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double> to_dense() const;

 private:
  std::size_t dim_;
  std::vector<std::size_t> support_;
  std::vector<double> values_;
  SparseMode mode_;
};

struct CoherenceSummary {
  double diag_min = 0.0;
  double diag_max = 0.0;
  double mu = 0.0;
  std::pair<std::size_t, std::size_t> argmax_pair{0, 1};
};

// C[i][j] = <column i of B, column j of A>. Summation runs over rows in index
// order for every entry, so results are reproducible bit for bit.
Matrix gram(const Matrix& b, const Matrix& a);

CoherenceSummary coherence(const Matrix& c);

Matrix normalize_columns(const Matrix& m);

std::vector<double> column_norms(const Matrix& m);

// Def: unit self inner products (to diag_tol) and |<c_i, c_j>| < mu for i != j.
bool is_incoherent(const Matrix& m, double mu, double diag_tol = 1e-12);

// y = M x for dense x of length M.cols().
std::vector<double> multiply(const Matrix& m, std::span<const double> x);
std::vector<double> multiply(const Matrix& m, const SparseVector& z);

double dot(std::span<const double> u, std::span<const double> v);
double norm2(std::span<const double> u);

}  // namespace superpose
