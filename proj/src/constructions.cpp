#include "superpose/constructions.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "superpose/parallel.hpp"
#include "superpose/rng.hpp"

namespace superpose {

namespace {

void require_positive(std::size_t d, std::size_t m) {
  if (d < 1 || m < 1)
    fail(ErrorKind::Parameter, "matrix dimensions must be positive, got d=" + std::to_string(d) +
                                   " m=" + std::to_string(m));
}

void check_shifted(double delta, double epsilon, std::size_t k, std::size_t m) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::Parameter, "delta must lie in (0, 1)");
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::Parameter, "epsilon must lie in (0, 1)");
  if (k < 1 || k > m)
    fail(ErrorKind::Parameter, "k must lie in [1, m], got k=" + std::to_string(k) + " m=" + std::to_string(m));
}

}  // namespace

void ConstructionSpec::validate() const {
  if (d < 1) fail(ErrorKind::Parameter, "d must be at least 1");
  if (m < 2) fail(ErrorKind::Parameter, "m must be at least 2");
  if (kind == ConstructionKind::ShiftedPair) {
    if (!params) fail(ErrorKind::Parameter, "shifted pair needs delta, epsilon and k");
    check_shifted(params->delta, params->epsilon, params->k, m);
  }
}

Matrix rademacher_matrix(std::size_t d, std::size_t m, std::uint64_t seed) {
  require_positive(d, m);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<double> e(d * m);
  parallel_for(m, [&](std::size_t c) {
    auto eng = column_stream(seed, c);
    std::uint64_t bits = 0;
    for (std::size_t r = 0; r < d; ++r) {
      if (r % 64 == 0) bits = eng();
      e[r * m + c] = (bits >> (r % 64)) & 1u ? s : -s;
    }
  });
  return Matrix(d, m, std::move(e));
}

Matrix gaussian_unit_matrix(std::size_t d, std::size_t m, std::uint64_t seed) {
  require_positive(d, m);
  std::vector<double> e(d * m);
  parallel_for(m, [&](std::size_t c) {
    auto eng = column_stream(seed, c);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> col(d);
    double sq = 0.0;
    // A zero draw has probability zero, but redraw rather than divide by it.
    while (sq == 0.0) {
      sq = 0.0;
      for (auto& v : col) {
        v = normal(eng);
        sq += v * v;
      }
    }
    const double n = std::sqrt(sq);
    for (std::size_t r = 0; r < d; ++r) e[r * m + c] = col[r] / n;
  });
  return Matrix(d, m, std::move(e));
}

double incoherence_dimension_exact(double m, double mu, double delta) {
  if (!(m > 1.0)) fail(ErrorKind::Parameter, "m must exceed 1");
  if (!(mu > 0.0 && mu <= 1.0)) fail(ErrorKind::Parameter, "mu must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::Parameter, "delta must lie in (0, 1)");
  return 2.0 / (mu * mu) * (2.0 * std::log(m) - std::log(delta));
}

std::size_t dimension_for_incoherence(std::size_t m, double mu, double delta) {
  if (m < 2) fail(ErrorKind::Parameter, "m must be at least 2, got " + std::to_string(m));
  if (!(mu > 0.0 && mu < 1.0)) fail(ErrorKind::Parameter, "mu must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::Parameter, "delta must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(incoherence_dimension_exact(static_cast<double>(m), mu, delta)));
}

double shifted_lambda(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::Parameter, "delta must lie in (0, 1)");
  return std::sqrt(1.0 / delta - 1.0);
}

double shifted_pair_mu(double delta, double epsilon, std::size_t k) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::Parameter, "epsilon must lie in (0, 1)");
  if (k < 1) fail(ErrorKind::Parameter, "k must be at least 1");
  const double lambda = shifted_lambda(delta);
  return epsilon / (static_cast<double>(k) * (1.0 + lambda) * (1.0 + lambda));
}

std::size_t shifted_pair_dimension(std::size_t m, double delta, double epsilon, std::size_t k) {
  return dimension_for_incoherence(m + 2, shifted_pair_mu(delta, epsilon, k), 0.01);
}

ShiftedPair shifted_pair(std::size_t d, std::size_t m, double delta, double epsilon, std::size_t k,
                         std::uint64_t seed) {
  require_positive(d, m);
  check_shifted(delta, epsilon, k, m);
  ShiftedPair out;
  out.lambda = shifted_lambda(delta);
  out.mu_target = shifted_pair_mu(delta, epsilon, k);

  double best_mu = INFINITY;
  for (int attempt = 0; attempt < kShiftedPairRetries; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : mix64(seed + static_cast<std::uint64_t>(attempt));
    const Matrix base = rademacher_matrix(d, m + 2, s);
    const auto summary = coherence(gram(base, base));
    best_mu = std::min(best_mu, summary.mu);
    const bool unit_diag = std::abs(summary.diag_min - 1.0) <= 1e-12 && std::abs(summary.diag_max - 1.0) <= 1e-12;
    if (!(unit_diag && summary.mu < out.mu_target)) continue;

    const std::size_t a_star = m, b_star = m + 1;
    std::vector<double> ea(d * m), eb(d * m);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t i = 0; i < m; ++i) {
        ea[r * m + i] = base(r, i) + out.lambda * base(r, a_star);
        eb[r * m + i] = base(r, i) + out.lambda * base(r, b_star);
      }
    out.a = Matrix(d, m, std::move(ea));
    out.b = Matrix(d, m, std::move(eb));
    out.mu_achieved = summary.mu;
    out.seed_used = s;
    out.attempts = attempt + 1;
    return out;
  }
  std::ostringstream msg;
  msg << "no " << out.mu_target << "-incoherent " << d << "x" << (m + 2) << " base matrix after "
      << kShiftedPairRetries << " seeds; best achieved mu = " << best_mu << " (need d >= "
      << shifted_pair_dimension(m, delta, epsilon, k) << ")";
  fail(ErrorKind::Construction, msg.str());
}

EmbeddingPair construct(const ConstructionSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ConstructionKind::Rademacher: {
      Matrix a = rademacher_matrix(spec.d, spec.m, spec.seed);
      return {a, a};
    }
    case ConstructionKind::GaussianUnit: {
      Matrix a = gaussian_unit_matrix(spec.d, spec.m, spec.seed);
      return {a, a};
    }
    case ConstructionKind::ShiftedPair: {
      auto p = shifted_pair(spec.d, spec.m, spec.params->delta, spec.params->epsilon, spec.params->k, spec.seed);
      return {std::move(p.a), std::move(p.b)};
    }
  }
  fail(ErrorKind::Parameter, "unknown construction kind");
}

}  // namespace superpose
