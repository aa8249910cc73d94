#include "superpose/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "superpose/constructions.hpp"
#include "superpose/parallel.hpp"
#include "superpose/rng.hpp"

namespace superpose {

namespace {

void check_pair(const Matrix& a, const Matrix& b, std::size_t k) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Dimension, "A " + a.shape() + " and B " + b.shape() + " differ in shape");
  if (k < 1 || k > a.cols())
    fail(ErrorKind::Parameter, "k must lie in [1, m], got k=" + std::to_string(k) + " m=" + std::to_string(a.cols()));
}

void finish(RecoveryReport& r) {
  r.max_error = 0.0;
  r.argmax_feature = 0;
  for (std::size_t i = 0; i < r.per_feature_error.size(); ++i)
    if (r.per_feature_error[i] > r.max_error) {
      r.max_error = r.per_feature_error[i];
      r.argmax_feature = i;
    }
}

}  // namespace

RecoveryReport worst_case_error_from_interference(const Matrix& c, std::size_t k) {
  if (c.rows() != c.cols()) fail(ErrorKind::Dimension, "interference matrix must be square, got " + c.shape());
  const std::size_t m = c.rows();
  if (k < 1 || k > m)
    fail(ErrorKind::Parameter, "k must lie in [1, m], got k=" + std::to_string(k) + " m=" + std::to_string(m));

  RecoveryReport r;
  r.k = k;
  r.per_feature_error.resize(m);
  std::vector<double> mags;
  mags.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    mags.clear();
    const auto row = c.row(i);
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) mags.push_back(std::abs(row[j]));
    const std::size_t take = std::min(k, mags.size());
    std::partial_sort(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(take), mags.end(), std::greater<>());
    // s_1 + ... + s_{k-1} and s_1 + ... + s_k, summed largest first
    double top_k_minus_1 = 0.0;
    for (std::size_t t = 0; t + 1 < k && t < take; ++t) top_k_minus_1 += mags[t];
    const double top_k = take == k ? top_k_minus_1 + mags[k - 1] : top_k_minus_1;
    r.per_feature_error[i] = std::max(std::abs(row[i] - 1.0) + top_k_minus_1, top_k);
  }
  finish(r);
  return r;
}

RecoveryReport worst_case_error(const Matrix& a, const Matrix& b, std::size_t k) {
  check_pair(a, b, k);
  return worst_case_error_from_interference(gram(b, a), k);
}

RecoveryReport brute_force_error(const Matrix& a, const Matrix& b, std::size_t k) {
  check_pair(a, b, k);
  const std::size_t m = a.cols();
  if (m > kBruteForceMaxFeatures || k > kBruteForceMaxSparsity)
    fail(ErrorKind::Guard, "enumeration limited to m <= 14 and k <= 4, got m=" + std::to_string(m) +
                               " k=" + std::to_string(k));
  const Matrix c = gram(b, a);
  RecoveryReport r;
  r.k = k;
  r.per_feature_error.assign(m, 0.0);

  // Walk every support of size 1..k in lexicographic order, then every sign
  // pattern on it; the empty support contributes error 0.
  std::vector<std::size_t> support;
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (!support.empty()) {
      const std::size_t s = support.size();
      for (std::uint32_t signs = 0; signs < (1u << s); ++signs) {
        for (std::size_t i = 0; i < m; ++i) {
          double v = 0.0;
          for (std::size_t t = 0; t < s; ++t) {
            const double z = (signs >> t) & 1u ? -1.0 : 1.0;
            v += c(i, support[t]) * z;
            if (support[t] == i) v -= z;
          }
          r.per_feature_error[i] = std::max(r.per_feature_error[i], std::abs(v));
        }
      }
    }
    if (support.size() == k) return;
    for (std::size_t j = start; j < m; ++j) {
      support.push_back(j);
      extend(j + 1);
      support.pop_back();
    }
  };
  extend(0);
  finish(r);
  return r;
}

bool recovery_check(const Matrix& a, const Matrix& b, std::size_t k, double epsilon) {
  return worst_case_error(a, b, k).max_error < epsilon;
}

bool lower_bound_regime(std::size_t m, std::size_t k, double epsilon) {
  const double kd = static_cast<double>(k);
  return epsilon > std::pow(kd, 1.5) * std::sqrt(5.0) / std::sqrt(static_cast<double>(m));
}

std::size_t count_successes(const ScanOptions& opts, std::size_t d) {
  std::vector<char> ok(opts.trials, 0);
  parallel_for(opts.trials, [&](std::size_t t) {
    const Matrix a = rademacher_matrix(d, opts.m, trial_seed(opts.seed, d, t));
    ok[t] = recovery_check(a, a, opts.k, opts.epsilon);
  });
  return static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
}

PhaseScanResult min_dimension_scan(const ScanOptions& opts) {
  if (opts.d_min < 1 || opts.d_min > opts.d_max)
    fail(ErrorKind::Parameter, "need 1 <= d_min <= d_max, got [" + std::to_string(opts.d_min) + ", " +
                                   std::to_string(opts.d_max) + "]");
  if (opts.trials < 1) fail(ErrorKind::Parameter, "trials must be at least 1");
  if (!(opts.success_threshold > 0.0 && opts.success_threshold <= 1.0))
    fail(ErrorKind::Parameter, "success threshold must lie in (0, 1]");
  if (opts.m < 2) fail(ErrorKind::Parameter, "m must be at least 2");
  if (opts.k < 1 || opts.k > opts.m) fail(ErrorKind::Parameter, "k must lie in [1, m]");
  if (!(opts.epsilon > 0.0)) fail(ErrorKind::Parameter, "epsilon must be positive");

  PhaseScanResult res;
  res.m = opts.m;
  res.k = opts.k;
  res.epsilon = opts.epsilon;
  res.trials = opts.trials;
  res.success_threshold = opts.success_threshold;
  res.in_lower_bound_regime = lower_bound_regime(opts.m, opts.k, opts.epsilon);

  auto passes = [&](std::size_t d) {
    auto it = res.per_d_success.find(d);
    if (it == res.per_d_success.end()) it = res.per_d_success.emplace(d, count_successes(opts, d)).first;
    return static_cast<double>(it->second) >= opts.success_threshold * static_cast<double>(opts.trials);
  };

  // Doubling phase.
  std::size_t lo = 0;  // last failing dimension (0: none yet)
  std::size_t hi = 0;  // first passing dimension
  for (std::size_t d = opts.d_min;; d = std::min(d * 2, opts.d_max)) {
    if (passes(d)) {
      hi = d;
      break;
    }
    lo = d;
    if (d == opts.d_max) break;
  }
  if (hi != 0) {
    // Bisection on (lo, hi]; success need not be monotone, so every count is kept.
    std::size_t left = lo == 0 ? opts.d_min : lo + 1;
    while (left < hi) {
      const std::size_t mid = left + (hi - left) / 2;
      if (passes(mid))
        hi = mid;
      else
        left = mid + 1;
    }
  }
  for (const auto& [d, s] : res.per_d_success)
    if (static_cast<double>(s) >= opts.success_threshold * static_cast<double>(opts.trials)) {
      res.d_star = d;
      break;
    }
  return res;
}

}  // namespace superpose
