#include "superpose/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace superpose {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

struct PairExtrema {
  double min = INFINITY;
  double max = -INFINITY;
};

// Extremes of cos(u_i, u_j), i != j, from the gram of the normalized columns.
PairExtrema pair_cosines(const Matrix& unit) {
  const Matrix g = gram(unit, unit);
  PairExtrema e;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i + 1; j < g.cols(); ++j) {
      const double c = clamp_unit(g(i, j));
      e.min = std::min(e.min, c);
      e.max = std::max(e.max, c);
    }
  return e;
}

GeometryReport extrema(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Dimension, "A " + a.shape() + " and B " + b.shape() + " differ in shape");
  if (a.cols() < 2) fail(ErrorKind::Degenerate, "geometry needs at least 2 features");
  const Matrix ua = normalize_columns(a);
  const Matrix ub = normalize_columns(b);
  GeometryReport r;
  r.max_self_cosine = -INFINITY;
  r.min_self_cosine = INFINITY;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    double s = 0.0;
    for (std::size_t row = 0; row < a.rows(); ++row) s += ua(row, i) * ub(row, i);
    s = clamp_unit(s);
    r.max_self_cosine = std::max(r.max_self_cosine, std::abs(s));
    r.min_self_cosine = std::min(r.min_self_cosine, s);
  }
  const auto rep = pair_cosines(ua);
  const auto probe = pair_cosines(ub);
  r.min_rep_pair_cosine = rep.min;
  r.max_rep_pair_cosine = rep.max;
  r.min_probe_pair_cosine = probe.min;
  r.max_probe_pair_cosine = probe.max;
  return r;
}

}  // namespace

bool GeometryReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseCheck& c) { return c.pass; });
}

double cosine(std::span<const double> u, std::span<const double> v) {
  const double nu = norm2(u);
  const double nv = norm2(v);
  if (nu == 0.0 || nv == 0.0) fail(ErrorKind::Singular, "cosine of a zero vector");
  return clamp_unit(dot(u, v) / (nu * nv));
}

GeometryReport verify_construction_geometry(const Matrix& a, const Matrix& b, double delta, double tol) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::Parameter, "delta must lie in (0, 1)");
  if (!(tol >= 0.0)) fail(ErrorKind::Parameter, "tol must be non-negative");
  GeometryReport r = extrema(a, b);
  r.mode = GeometryMode::Construction;
  r.param_1 = delta;
  r.param_2 = tol;
  const double self_bound = delta + tol;
  const double pair_bound = 1.0 - delta - tol;
  r.clauses = {
      {"(i) max |cos(a_i, b_i)|", "<", r.max_self_cosine, self_bound, r.max_self_cosine < self_bound},
      {"(ii) min cos(a_i, a_j)", ">", r.min_rep_pair_cosine, pair_bound, r.min_rep_pair_cosine > pair_bound},
      {"(iii) min cos(b_i, b_j)", ">", r.min_probe_pair_cosine, pair_bound, r.min_probe_pair_cosine > pair_bound},
  };
  return r;
}

double norm_bounded_self_bound(double epsilon, double gamma) { return (1.0 - epsilon) / (gamma * gamma); }

double norm_bounded_pair_bound(double epsilon, double gamma) {
  const double g2 = gamma * gamma;
  const double ratio = (1.0 - epsilon) * (1.0 - epsilon) / (g2 * g2);
  return epsilon * g2 / (1.0 - epsilon) + std::sqrt(std::max(0.0, 1.0 - ratio));
}

GeometryReport verify_norm_bounded_geometry(const Matrix& a, const Matrix& b, double epsilon, double gamma) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::Parameter, "epsilon must lie in (0, 1)");
  if (!(gamma >= 1.0)) fail(ErrorKind::Parameter, "gamma must be at least 1");
  // Column norms may exceed gamma by rounding after normalization.
  const double limit = gamma * (1.0 + 1e-12);
  std::ostringstream offenders;
  std::size_t bad = 0;
  const auto na = column_norms(a);
  const auto nb = column_norms(b);
  for (std::size_t i = 0; i < na.size(); ++i)
    if (na[i] > limit) offenders << (bad++ ? ", " : "") << "a_" << i << " (" << na[i] << ")";
  for (std::size_t i = 0; i < nb.size(); ++i)
    if (nb[i] > limit) offenders << (bad++ ? ", " : "") << "b_" << i << " (" << nb[i] << ")";
  if (bad) fail(ErrorKind::Precondition, "column norms exceed gamma=" + std::to_string(gamma) + ": " + offenders.str());

  GeometryReport r = extrema(a, b);
  r.mode = GeometryMode::NormBounded;
  r.param_1 = epsilon;
  r.param_2 = gamma;
  const double self_bound = norm_bounded_self_bound(epsilon, gamma);
  const double pair_bound = norm_bounded_pair_bound(epsilon, gamma);
  r.clauses = {
      {"(i) min cos(a_i, b_i)", ">=", r.min_self_cosine, self_bound, r.min_self_cosine >= self_bound},
      {"(ii) max cos(a_i, a_j)", "<=", r.max_rep_pair_cosine, pair_bound, r.max_rep_pair_cosine <= pair_bound},
      {"(iii) max cos(b_i, b_j)", "<=", r.max_probe_pair_cosine, pair_bound, r.max_probe_pair_cosine <= pair_bound},
  };
  return r;
}

}  // namespace superpose
