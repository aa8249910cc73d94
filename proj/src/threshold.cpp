#include "superpose/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace superpose {

namespace {

void check_k(std::size_t k, std::size_t m) {
  if (k < 1 || k > m)
    fail(ErrorKind::Parameter, "k must lie in [1, m], got k=" + std::to_string(k) + " m=" + std::to_string(m));
}

void finish(MarginReport& r, std::size_t m) {
  r.separable = std::all_of(r.per_feature.begin(), r.per_feature.end(),
                            [](const FeatureMargin& f) { return f.margin > 0.0; });
  r.k_at_least_sqrt_m = static_cast<double>(r.k) * static_cast<double>(r.k) >= static_cast<double>(m);
  if (r.separable) {
    std::vector<double> tight, mid;
    for (const auto& f : r.per_feature) {
      tight.push_back(f.max_inactive);
      mid.push_back(0.5 * (f.max_inactive + f.min_active));
    }
    r.witness_thresholds = std::move(tight);
    r.midpoint_thresholds = std::move(mid);
  }
}

}  // namespace

MarginReport separation_margins_from_interference(const Matrix& c, std::size_t k) {
  if (c.rows() != c.cols()) fail(ErrorKind::Dimension, "interference matrix must be square, got " + c.shape());
  const std::size_t m = c.rows();
  check_k(k, m);
  MarginReport r;
  r.k = k;
  r.per_feature.resize(m);
  std::vector<double> neg, pos;
  for (std::size_t i = 0; i < m; ++i) {
    neg.clear();
    pos.clear();
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double v = c(i, j);
      if (v < 0.0) neg.push_back(v);
      if (v > 0.0) pos.push_back(v);
    }
    // Only entries that push the extremum further are worth switching on.
    const std::size_t n_neg = std::min(k - 1, neg.size());
    const std::size_t n_pos = std::min(k, pos.size());
    std::partial_sort(neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(n_neg), neg.end());
    std::partial_sort(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(n_pos), pos.end(), std::greater<>());
    double active = c(i, i);
    for (std::size_t t = 0; t < n_neg; ++t) active += neg[t];
    double inactive = 0.0;
    for (std::size_t t = 0; t < n_pos; ++t) inactive += pos[t];
    r.per_feature[i] = {active, inactive, active - inactive};
  }
  finish(r, m);
  return r;
}

MarginReport separation_margins(const Matrix& a, const Matrix& b, std::size_t k) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Dimension, "A " + a.shape() + " and B " + b.shape() + " differ in shape");
  return separation_margins_from_interference(gram(b, a), k);
}

MarginReport brute_force_margins(const Matrix& a, const Matrix& b, std::size_t k) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Dimension, "A " + a.shape() + " and B " + b.shape() + " differ in shape");
  const std::size_t m = a.cols();
  check_k(k, m);
  if (m > kBruteMarginMaxFeatures || k > kBruteMarginMaxSparsity)
    fail(ErrorKind::Guard, "enumeration limited to m <= 16 and k <= 4, got m=" + std::to_string(m) +
                               " k=" + std::to_string(k));
  const Matrix c = gram(b, a);
  MarginReport r;
  r.k = k;
  std::vector<double> lo(m, INFINITY), hi(m, -INFINITY);
  std::vector<std::size_t> support;
  std::vector<char> member(m, 0);
  std::function<void(std::size_t)> visit = [&](std::size_t start) {
    for (std::size_t i = 0; i < m; ++i) {
      double v = 0.0;
      for (auto j : support) v += c(i, j);
      if (member[i])
        lo[i] = std::min(lo[i], v);
      else
        hi[i] = std::max(hi[i], v);
    }
    if (support.size() == k) return;
    for (std::size_t j = start; j < m; ++j) {
      support.push_back(j);
      member[j] = 1;
      visit(j + 1);
      member[j] = 0;
      support.pop_back();
    }
  };
  visit(0);
  r.per_feature.resize(m);
  for (std::size_t i = 0; i < m; ++i) r.per_feature[i] = {lo[i], hi[i], lo[i] - hi[i]};
  finish(r, m);
  return r;
}

bool thresholds_separate(const MarginReport& report, const std::vector<double>& t) {
  if (t.size() != report.per_feature.size()) fail(ErrorKind::Dimension, "threshold vector has the wrong length");
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& f = report.per_feature[i];
    if (!(f.max_inactive <= t[i] && t[i] < f.min_active)) return false;
  }
  return true;
}

Activation make_activation(BuiltinActivation kind, double shift) {
  switch (kind) {
    case BuiltinActivation::Identity: return [shift](double x) { return x + shift; };
    case BuiltinActivation::Tanh: return [shift](double x) { return std::tanh(x + shift); };
    case BuiltinActivation::Relu: return [shift](double x) { return std::max(0.0, x + shift); };
  }
  fail(ErrorKind::Parameter, "unknown activation");
}

namespace {

constexpr int kMonotoneSamples = 513;

void require_monotone(const Activation& sigma, double lo, double hi) {
  if (!(hi > lo)) hi = lo + 1.0;
  double prev = sigma(lo);
  for (int s = 1; s < kMonotoneSamples; ++s) {
    const double x = lo + (hi - lo) * s / (kMonotoneSamples - 1);
    const double y = sigma(x);
    if (std::isnan(y) || std::isnan(prev) || y < prev) {
      std::ostringstream msg;
      msg << "activation is not monotone: sigma decreases near x=" << x << " (sampled on [" << lo << ", " << hi
          << "])";
      fail(ErrorKind::Contract, msg.str());
    }
    prev = y;
  }
}

// Brackets sigma's sign change: sigma(lo) <= 0 < sigma(hi), hi - lo as small
// as bisection allows. Returns false when sigma never changes sign.
bool zero_crossing(const Activation& sigma, double& lo, double& hi) {
  double r = 1.0;
  while (r <= 1e12 && !(sigma(-r) <= 0.0 && sigma(r) > 0.0)) r *= 2.0;
  if (r > 1e12) return false;
  lo = -r;
  hi = r;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (sigma(mid) > 0.0 ? hi : lo) = mid;
  }
  return true;
}

}  // namespace

bool monotone_transform_separation(const Matrix& a, const Matrix& b, std::size_t k, const Activation& sigma,
                                   const std::optional<std::vector<double>>& offset) {
  if (!sigma) fail(ErrorKind::Parameter, "activation is empty");
  const MarginReport r = separation_margins(a, b, k);
  const std::size_t m = r.per_feature.size();
  if (offset && offset->size() != m)
    fail(ErrorKind::Dimension, "offset has length " + std::to_string(offset->size()) + ", expected " + std::to_string(m));

  double lo = INFINITY, hi = -INFINITY;
  for (const auto& f : r.per_feature) {
    lo = std::min({lo, f.min_active, f.max_inactive});
    hi = std::max({hi, f.min_active, f.max_inactive});
  }
  require_monotone(sigma, lo - 1.0, hi + 1.0);

  std::vector<double> bias(m);
  if (offset) {
    bias = *offset;
  } else {
    double z_lo = 0.0, z_hi = 0.0;
    if (!zero_crossing(sigma, z_lo, z_hi)) return false;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& f = r.per_feature[i];
      bias[i] = 0.5 * ((z_hi - f.min_active) + (z_lo - f.max_inactive));
    }
  }

  double e_lo = INFINITY, e_hi = -INFINITY;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& f = r.per_feature[i];
    e_lo = std::min({e_lo, f.min_active + bias[i], f.max_inactive + bias[i]});
    e_hi = std::max({e_hi, f.min_active + bias[i], f.max_inactive + bias[i]});
  }
  require_monotone(sigma, e_lo, e_hi);

  // sigma monotone: the extremal readouts decide every binary k-sparse input.
  for (std::size_t i = 0; i < m; ++i) {
    const auto& f = r.per_feature[i];
    if (!(sigma(f.min_active + bias[i]) > 0.0)) return false;
    if (sigma(f.max_inactive + bias[i]) > 0.0) return false;
  }
  return true;
}

}  // namespace superpose
