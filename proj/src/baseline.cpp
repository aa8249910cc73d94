#include "superpose/baseline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "superpose/constructions.hpp"
#include "superpose/parallel.hpp"
#include "superpose/recovery.hpp"
#include "superpose/rng.hpp"

namespace superpose {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;

ConstMap as_eigen(const Matrix& a) { return ConstMap(a.entries().data(), Eigen::Index(a.rows()), Eigen::Index(a.cols())); }

Eigen::VectorXd as_vector(std::span<const double> x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), Eigen::Index(x.size()));
}

void check_measurement(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.rows())
    fail(ErrorKind::Dimension, "measurement of length " + std::to_string(x.size()) + " does not match A " + a.shape());
}

double residual_norm(const Matrix& a, const std::vector<double>& z, std::span<const double> x) {
  const auto y = multiply(a, z);
  double s = 0.0;
  for (std::size_t r = 0; r < y.size(); ++r) s += (y[r] - x[r]) * (y[r] - x[r]);
  return std::sqrt(s);
}

struct Fit {
  Eigen::VectorXd coef;
  bool fallback = false;
};

// Least squares on the selected columns; minimum-norm solution when the
// selection is rank deficient.
Fit least_squares(const ConstMap& a, const std::vector<std::size_t>& cols, const Eigen::VectorXd& x) {
  Eigen::MatrixXd s(a.rows(), Eigen::Index(cols.size()));
  for (std::size_t t = 0; t < cols.size(); ++t) s.col(Eigen::Index(t)) = a.col(Eigen::Index(cols[t]));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(s);
  if (qr.rank() == s.cols()) return {qr.solve(x), false};
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(s);
  return {cod.solve(x), true};
}

}  // namespace

DecodeResult omp_decode(const Matrix& a, std::span<const double> x, std::size_t k) {
  check_measurement(a, x);
  if (k < 1 || k > a.rows() || a.rows() > a.cols())
    fail(ErrorKind::Parameter, "omp needs 1 <= k <= d <= m, got k=" + std::to_string(k) + " for A " + a.shape());
  const ConstMap am = as_eigen(a);
  const Eigen::VectorXd xv = as_vector(x);
  const std::size_t m = a.cols();

  DecodeResult out;
  out.z_hat.assign(m, 0.0);
  Eigen::VectorXd residual = xv;
  std::vector<std::size_t> selected;
  std::vector<char> used(m, 0);
  Fit fit;
  while (selected.size() < k && residual.norm() > kOmpResidualTol) {
    const Eigen::VectorXd corr = am.transpose() * residual;
    std::size_t pick = m;
    double best = -1.0;
    for (std::size_t j = 0; j < m; ++j)
      if (!used[j] && std::abs(corr[Eigen::Index(j)]) > best) {
        best = std::abs(corr[Eigen::Index(j)]);
        pick = j;
      }
    selected.push_back(pick);
    used[pick] = 1;
    fit = least_squares(am, selected, xv);
    out.pinv_fallback |= fit.fallback;
    residual = xv;
    for (std::size_t t = 0; t < selected.size(); ++t) residual -= fit.coef[Eigen::Index(t)] * am.col(Eigen::Index(selected[t]));
    ++out.iterations;
  }
  for (std::size_t t = 0; t < selected.size(); ++t) out.z_hat[selected[t]] = fit.coef[Eigen::Index(t)];
  out.residual_norm = residual_norm(a, out.z_hat, x);
  out.converged = out.residual_norm <= kOmpResidualTol;
  return out;
}

DecodeResult l1_decode(const Matrix& a, std::span<const double> x, std::size_t max_iter, double tol) {
  check_measurement(a, x);
  if (a.rows() > a.cols()) fail(ErrorKind::Parameter, "l1 decoding needs d <= m, got A " + a.shape());
  if (!(tol > 0.0)) fail(ErrorKind::Parameter, "tolerance must be positive");
  const std::size_t m = a.cols();
  const ConstMap am = as_eigen(a);
  const Eigen::VectorXd xv = as_vector(x);

  DecodeResult out;
  out.z_hat.assign(m, 0.0);
  const Eigen::VectorXd atx = am.transpose() * xv;
  const double lambda0 = atx.cwiseAbs().maxCoeff();
  if (xv.norm() <= tol || lambda0 == 0.0) {
    out.residual_norm = xv.norm();
    out.converged = out.residual_norm <= tol;
    return out;
  }

  // Lipschitz constant of the smooth part: largest eigenvalue of A A^T.
  const Eigen::MatrixXd aat = am * am.transpose();
  const double lip = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(aat, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  const double step = 1.0 / lip;

  Eigen::VectorXd z = Eigen::VectorXd::Zero(Eigen::Index(m));
  Eigen::VectorXd best = z;
  double best_res = xv.norm();
  auto soft = [](double v, double t) { return v > t ? v - t : (v < -t ? v + t : 0.0); };

  auto try_debias = [&]() {
    const double zmax = z.cwiseAbs().maxCoeff();
    if (zmax == 0.0) return false;
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < m; ++j)
      if (std::abs(z[Eigen::Index(j)]) > 1e-9 * zmax) support.push_back(j);
    if (support.size() > a.rows()) return false;
    const Fit fit = least_squares(am, support, xv);
    Eigen::VectorXd polished = Eigen::VectorXd::Zero(Eigen::Index(m));
    for (std::size_t t = 0; t < support.size(); ++t) polished[Eigen::Index(support[t])] = fit.coef[Eigen::Index(t)];
    const double res = (am * polished - xv).norm();
    if (res < best_res) {
      best = polished;
      best_res = res;
    }
    return res <= tol;
  };

  double lambda = 0.5 * lambda0;
  const double lambda_min = 1e-12 * lambda0;
  while (out.iterations < max_iter) {
    // One FISTA stage at fixed penalty.
    Eigen::VectorXd y = z;
    double t = 1.0;
    while (out.iterations < max_iter) {
      const Eigen::VectorXd grad = am.transpose() * (am * y - xv);
      Eigen::VectorXd next = y - step * grad;
      for (Eigen::Index j = 0; j < next.size(); ++j) next[j] = soft(next[j], step * lambda);
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = next + ((t - 1.0) / t_next) * (next - z);
      const double change = (next - z).cwiseAbs().maxCoeff();
      z = next;
      t = t_next;
      ++out.iterations;
      if (change <= 1e-12 * std::max(1.0, z.cwiseAbs().maxCoeff())) break;
    }
    const double res = (am * z - xv).norm();
    if (res < best_res) {
      best = z;
      best_res = res;
    }
    // Polish once the lasso iterate is nearly feasible.
    if (res <= 1e-3 * xv.norm() && try_debias()) break;
    if (best_res <= tol) break;
    if (lambda <= lambda_min) break;
    lambda *= 0.5;
  }

  for (std::size_t j = 0; j < m; ++j) out.z_hat[j] = best[Eigen::Index(j)];
  out.residual_norm = residual_norm(a, out.z_hat, x);
  out.converged = out.residual_norm <= tol;
  return out;
}

std::vector<std::size_t> default_gap_ladder(std::size_t m) {
  std::vector<std::size_t> ladder;
  for (std::size_t p = 8; p < m; p *= 2) {
    ladder.push_back(p);
    if (p + p / 2 < m) ladder.push_back(p + p / 2);
  }
  ladder.push_back(m);
  return ladder;
}

Matrix gap_embedding(std::size_t d, std::size_t m, std::uint64_t seed) {
  if (d < m) return gaussian_unit_matrix(d, m, seed);
  std::vector<double> e(d * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) e[i * m + i] = 1.0;
  return Matrix(d, m, std::move(e));
}

std::vector<GapRow> gap_experiment(const GapOptions& opts) {
  if (opts.m < 2) fail(ErrorKind::Parameter, "m must be at least 2");
  if (opts.k < 1 || opts.k > opts.m) fail(ErrorKind::Parameter, "k must lie in [1, m]");
  if (opts.trials < 1) fail(ErrorKind::Parameter, "trials must be at least 1");
  if (!(opts.epsilon > 0.0)) fail(ErrorKind::Parameter, "epsilon must be positive");
  const std::vector<std::size_t> ladder = opts.ladder.empty() ? default_gap_ladder(opts.m) : opts.ladder;
  for (auto d : ladder)
    if (d < 1) fail(ErrorKind::Parameter, "ladder dimensions must be positive");

  const std::size_t n = ladder.size() * opts.trials;
  std::vector<char> omp_ok(n, 0), lin_ok(n, 0);
  parallel_for(n, [&](std::size_t job) {
    const std::size_t d = ladder[job / opts.trials];
    const std::size_t t = job % opts.trials;
    const std::uint64_t s = trial_seed(opts.seed, d, t);
    const Matrix a = gap_embedding(d, opts.m, s);
    lin_ok[job] = recovery_check(a, a, opts.k, opts.epsilon);

    std::mt19937_64 eng(mix64(s ^ 0x5eedULL));
    std::vector<std::size_t> idx(opts.m);
    for (std::size_t i = 0; i < opts.m; ++i) idx[i] = i;
    // Partial Fisher-Yates for a uniform k-subset.
    std::vector<double> z(opts.m, 0.0);
    for (std::size_t i = 0; i < opts.k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, opts.m - 1);
      std::swap(idx[i], idx[pick(eng)]);
      z[idx[i]] = (eng() & 1u) ? 1.0 : -1.0;
    }
    if (opts.k > d) return;
    // The identity rungs are square or tall; OMP's d <= m precondition is about
    // compression, so decode on the top m rows there.
    const Matrix dec = d > opts.m ? Matrix::identity(opts.m) : a;
    const auto x = multiply(dec, z);
    const auto r = omp_decode(dec, x, opts.k);
    double err = 0.0;
    for (std::size_t i = 0; i < opts.m; ++i) err = std::max(err, std::abs(r.z_hat[i] - z[i]));
    omp_ok[job] = err <= kExactRecoveryTol;
  });

  std::vector<GapRow> rows;
  for (std::size_t r = 0; r < ladder.size(); ++r) {
    GapRow row{ladder[r], 0, 0, opts.trials};
    for (std::size_t t = 0; t < opts.trials; ++t) {
      row.omp_successes += omp_ok[r * opts.trials + t];
      row.linear_successes += lin_ok[r * opts.trials + t];
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace superpose
