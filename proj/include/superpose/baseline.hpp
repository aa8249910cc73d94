#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "superpose/core.hpp"

namespace superpose {

struct DecodeResult {
  std::vector<double> z_hat;
  double residual_norm = 0.0;  // |A z_hat - x|_2, recomputed on exit
  std::size_t iterations = 0;
  bool converged = false;
  bool pinv_fallback = false;
};

inline constexpr double kOmpResidualTol = 1e-10;

// Orthogonal matching pursuit: pick the column most correlated with the
// residual (ties to the smallest index), refit by least squares on the
// support, stop after k picks or once the residual is <= 1e-10.
DecodeResult omp_decode(const Matrix& a, std::span<const double> x, std::size_t k);

// Approximate min |z|_1 subject to Az = x: FISTA on the lasso with a penalty
// halved between stages, then a least-squares debias on the recovered support.
DecodeResult l1_decode(const Matrix& a, std::span<const double> x, std::size_t max_iter, double tol);

struct GapOptions {
  std::size_t m = 512;
  std::size_t k = 4;
  double epsilon = 0.5;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::vector<std::size_t> ladder;  // empty: default_gap_ladder(m)
};

struct GapRow {
  std::size_t d = 0;
  std::size_t omp_successes = 0;
  std::size_t linear_successes = 0;
  std::size_t trials = 0;

  double omp_success() const { return trials ? double(omp_successes) / double(trials) : 0.0; }
  double linear_success() const { return trials ? double(linear_successes) / double(trials) : 0.0; }
};

// 8, 12, 16, 24, ... (powers of two and their 1.5x) below m, then m itself.
std::vector<std::size_t> default_gap_ladder(std::size_t m);

// The embedding used at dimension d: unit Gaussian columns for d < m, the
// identity embedding for d >= m (zero-padded when d > m).
Matrix gap_embedding(std::size_t d, std::size_t m, std::uint64_t seed);

inline constexpr double kExactRecoveryTol = 1e-6;

// Per rung: OMP exact recovery of a random k-sparse +-1 vector and the linear
// eps-recovery predicate, on the same A = B and seeds.
std::vector<GapRow> gap_experiment(const GapOptions& opts);

}  // namespace superpose
