#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "superpose/core.hpp"

namespace superpose {

struct RecoveryReport {
  std::vector<double> per_feature_error;
  double max_error = 0.0;
  std::size_t argmax_feature = 0;
  std::size_t k = 0;
};

// Exact sup over k-sparse z in [-1,1]^m of |(B^T A z - z)_i|, per feature.
// With s_1 >= s_2 >= ... the off-diagonal magnitudes of row i of C:
//   error_i = max(|C_ii - 1| + s_1 + ... + s_{k-1},  s_1 + ... + s_k).
RecoveryReport worst_case_error(const Matrix& a, const Matrix& b, std::size_t k);
RecoveryReport worst_case_error_from_interference(const Matrix& c, std::size_t k);

inline constexpr std::size_t kBruteForceMaxFeatures = 14;
inline constexpr std::size_t kBruteForceMaxSparsity = 4;

// Enumerates every signed vertex of every support of size <= k. Guarded to
// m <= 14, k <= 4.
RecoveryReport brute_force_error(const Matrix& a, const Matrix& b, std::size_t k);

// ||B^T A z - z||_inf < epsilon for all k-sparse z in [-1,1]^m (strict).
bool recovery_check(const Matrix& a, const Matrix& b, std::size_t k, double epsilon);

struct ScanOptions {
  std::size_t m = 2;
  std::size_t k = 1;
  double epsilon = 0.5;
  std::size_t trials = 10;
  double success_threshold = 0.5;
  std::size_t d_min = 1;
  std::size_t d_max = 1024;
  std::uint64_t seed = 0;
};

struct PhaseScanResult {
  std::size_t m = 0;
  std::size_t k = 0;
  double epsilon = 0.0;
  std::size_t trials = 0;
  double success_threshold = 0.0;
  std::optional<std::size_t> d_star;
  std::map<std::size_t, std::size_t> per_d_success;
  // The lower-bound regime is eps > k^{3/2} sqrt(5) / sqrt(m); scans
  // outside that regime are legal and flagged here.
  bool in_lower_bound_regime = false;
};

// Successes of `trials` seeded Rademacher embeddings (A = B) at dimension d.
// Trial t uses seed trial_seed(seed, d, t), so counts do not depend on the
// scan schedule.
std::size_t count_successes(const ScanOptions& opts, std::size_t d);

// Doubling from d_min until a dimension meets the threshold, then bisection
// between the last failing and first passing dimension. d_star is the smallest
// evaluated d whose success fraction meets the threshold.
PhaseScanResult min_dimension_scan(const ScanOptions& opts);

bool lower_bound_regime(std::size_t m, std::size_t k, double epsilon);

}  // namespace superpose
