#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "superpose/core.hpp"

namespace superpose {

struct FeatureMargin {
  double min_active = 0.0;    // min over binary k-sparse z with z_i = 1 of (Cz)_i
  double max_inactive = 0.0;  // max over binary k-sparse z with z_i = 0 of (Cz)_i
  double margin = 0.0;        // min_active - max_inactive
};

struct MarginReport {
  std::vector<FeatureMargin> per_feature;
  bool separable = false;
  std::size_t k = 0;
  // t_i = max_inactive_i: (Cz)_i > t_i iff z_i = 1, tight on the inactive side.
  std::optional<std::vector<double>> witness_thresholds;
  // Midpoint of [max_inactive_i, min_active_i); the robust alternative.
  std::optional<std::vector<double>> midpoint_thresholds;
  // The lower-bound regime needs k < sqrt(m).
  bool k_at_least_sqrt_m = false;
};

MarginReport separation_margins(const Matrix& a, const Matrix& b, std::size_t k);
MarginReport separation_margins_from_interference(const Matrix& c, std::size_t k);

inline constexpr std::size_t kBruteMarginMaxFeatures = 16;
inline constexpr std::size_t kBruteMarginMaxSparsity = 4;

MarginReport brute_force_margins(const Matrix& a, const Matrix& b, std::size_t k);

// True iff every t satisfies max_inactive_i <= t_i < min_active_i.
bool thresholds_separate(const MarginReport& report, const std::vector<double>& t);

using Activation = std::function<double(double)>;

enum class BuiltinActivation { Identity, Tanh, Relu };
Activation make_activation(BuiltinActivation kind, double shift = 0.0);

// Decides whether sigma((B^T A z)_i + b_i) > 0 exactly when z_i = 1, for every
// feature and binary k-sparse z. Because sigma is monotone, only the extremal
// readouts min_active_i and max_inactive_i need checking. When `offset` is
// absent, b_i is placed at sigma's zero crossing minus the midpoint threshold,
// so the result equals separability whenever sigma changes sign.
// Throws Contract if sigma decreases anywhere on the sampled readout range.
bool monotone_transform_separation(const Matrix& a, const Matrix& b, std::size_t k,
                                   const Activation& sigma,
                                   const std::optional<std::vector<double>>& offset = std::nullopt);

}  // namespace superpose
