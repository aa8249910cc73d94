#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "superpose/core.hpp"

namespace superpose {

enum class ConstructionKind { Rademacher, GaussianUnit, ShiftedPair };

struct ShiftedParams {
  double delta = 0.0;
  double epsilon = 0.0;
  std::size_t k = 1;
};

struct ConstructionSpec {
  std::size_t d = 0;
  std::size_t m = 0;
  ConstructionKind kind = ConstructionKind::Rademacher;
  std::uint64_t seed = 0;
  std::optional<ShiftedParams> params;

  void validate() const;
};

// Entries are exactly +1/sqrt(d) or -1/sqrt(d).
Matrix rademacher_matrix(std::size_t d, std::size_t m, std::uint64_t seed);

// i.i.d. standard normal columns rescaled to unit Euclidean norm.
Matrix gaussian_unit_matrix(std::size_t d, std::size_t m, std::uint64_t seed);

// ceil((2 / mu^2) (2 ln m - ln delta)), natural logarithms. A d x m
// Rademacher matrix at this size is mu-incoherent with probability >= 1-delta.
std::size_t dimension_for_incoherence(std::size_t m, double mu, double delta);
// The unrounded formula for real m > 1, 0 < mu <= 1, 0 < delta < 1.
double incoherence_dimension_exact(double m, double mu, double delta);

struct ShiftedPair {
  Matrix a;
  Matrix b;
  double lambda = 0.0;
  double mu_target = 0.0;    // eps / (k (1 + lambda)^2)
  double mu_achieved = 0.0;  // certified coherence of the base matrix
  std::uint64_t seed_used = 0;
  int attempts = 0;
};

inline constexpr int kShiftedPairRetries = 16;

double shifted_lambda(double delta);
double shifted_pair_mu(double delta, double epsilon, std::size_t k);
// Smallest d for which shifted_pair's base matrix is expected to certify
// (dimension_for_incoherence at m + 2 columns, failure budget 0.01).
std::size_t shifted_pair_dimension(std::size_t m, double delta, double epsilon, std::size_t k);

// a_i = c_i + lambda a*, b_i = c_i + lambda b* with lambda = sqrt(1/delta - 1),
// where c_1..c_m, a*, b* are the columns of a d x (m+2) Rademacher matrix that
// is certified mu-incoherent by direct computation. Up to 16 seeds are tried.
ShiftedPair shifted_pair(std::size_t d, std::size_t m, double delta, double epsilon, std::size_t k,
                         std::uint64_t seed);

struct EmbeddingPair {
  Matrix a;
  Matrix b;
};

// Dispatches on spec.kind; the single-matrix kinds return A == B.
EmbeddingPair construct(const ConstructionSpec& spec);

}  // namespace superpose
