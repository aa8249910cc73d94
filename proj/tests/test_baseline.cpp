#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "superpose/baseline.hpp"
#include "superpose/constructions.hpp"
#include "superpose/recovery.hpp"

using namespace superpose;

namespace {

std::vector<double> random_sparse_signs(std::size_t m, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), eng);
  std::vector<double> z(m, 0.0);
  for (std::size_t t = 0; t < k; ++t) z[idx[t]] = (eng() & 1u) ? 1.0 : -1.0;
  return z;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

std::vector<std::size_t> support(const std::vector<double>& z, double tol) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (std::abs(z[i]) > tol) s.push_back(i);
  return s;
}

double residual(const Matrix& a, const std::vector<double>& z, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double y = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) y += a(r, c) * z[c];
    s += (y - x[r]) * (y - x[r]);
  }
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("baseline") {
  TEST_CASE("omp on the identity picks the unit vector") {
    std::vector<double> x(6, 0.0);
    x[3] = 1.0;
    const auto r = omp_decode(Matrix::identity(6), x, 1);
    CHECK(r.z_hat == x);
    CHECK(r.converged);
    CHECK(r.residual_norm == 0.0);
  }

  TEST_CASE("omp and l1 on a zero measurement") {
    const Matrix a = gaussian_unit_matrix(8, 16, 1);
    const std::vector<double> x(8, 0.0);
    const auto o = omp_decode(a, x, 3);
    CHECK(o.z_hat == std::vector<double>(16, 0.0));
    CHECK(o.converged);
    const auto l = l1_decode(a, x, 1000, 1e-9);
    CHECK(l.z_hat == std::vector<double>(16, 0.0));
    CHECK(l.converged);
  }

  TEST_CASE("l1 on the identity returns x") {
    const std::vector<double> x{0.5, -2.0, 0.0, 3.0, 1e-3};
    const auto r = l1_decode(Matrix::identity(5), x, 2000, 1e-10);
    CHECK(r.converged);
    CHECK(max_abs_diff(r.z_hat, x) <= 1e-12);
  }

  TEST_CASE("omp exact recovery rate on Gaussian embeddings") {
    const std::size_t m = 128, k = 4;
    const auto d = std::size_t(std::ceil(4.0 * double(k) * std::log(double(m))));
    int ok = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      const Matrix a = gaussian_unit_matrix(d, m, 500 + t);
      const auto z = random_sparse_signs(m, k, t);
      const auto x = multiply(a, z);
      const auto r = omp_decode(a, x, k);
      ok += max_abs_diff(r.z_hat, z) <= 1e-8;
    }
    CHECK(ok >= 90);
  }

  TEST_CASE("l1 support agrees with omp on easy instances") {
    const std::size_t m = 64, k = 3, d = 48;
    int compared = 0;
    for (std::uint64_t t = 0; t < 12; ++t) {
      const Matrix a = gaussian_unit_matrix(d, m, 900 + t);
      const auto z = random_sparse_signs(m, k, 40 + t);
      const auto x = multiply(a, z);
      const auto o = omp_decode(a, x, k);
      if (max_abs_diff(o.z_hat, z) > 1e-8) continue;
      ++compared;
      const auto l = l1_decode(a, x, 20000, 1e-8);
      CHECK(l.converged);
      CHECK(support(l.z_hat, 1e-6) == support(o.z_hat, 1e-6));
    }
    CHECK(compared >= 10);
  }

  TEST_CASE("stored residuals match recomputation") {
    for (std::uint64_t t = 0; t < 10; ++t) {
      const Matrix a = gaussian_unit_matrix(20, 40, t);
      const auto x = multiply(a, random_sparse_signs(40, 6, t + 1));
      const auto o = omp_decode(a, x, 3);
      CHECK(std::abs(o.residual_norm - residual(a, o.z_hat, x)) <= 1e-9);
      const auto l = l1_decode(a, x, 300, 1e-9);
      CHECK(std::abs(l.residual_norm - residual(a, l.z_hat, x)) <= 1e-9);
      if (o.converged) CHECK(o.residual_norm <= kOmpResidualTol);
      if (l.converged) CHECK(l.residual_norm <= 1e-9);
    }
  }

  TEST_CASE("l1 reports non-convergence instead of hiding it") {
    const Matrix a = gaussian_unit_matrix(30, 60, 3);
    const auto x = multiply(a, random_sparse_signs(60, 25, 9));
    const auto r = l1_decode(a, x, 3, 1e-12);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations <= 3);
  }

  TEST_CASE("omp residual never grows with more picks") {
    for (std::uint64_t t = 0; t < 10; ++t) {
      const Matrix a = gaussian_unit_matrix(24, 60, 70 + t);
      const auto x = multiply(a, random_sparse_signs(60, 3, t));
      double prev = INFINITY;
      for (std::size_t kk = 3; kk <= 10; ++kk) {
        const double res = omp_decode(a, x, kk).residual_norm;
        CHECK(res <= prev + 1e-12);
        prev = res;
      }
    }
  }

  TEST_CASE("omp rejects bad sparsity and shapes") {
    const Matrix a = gaussian_unit_matrix(4, 8, 0);
    CHECK_THROWS_AS(omp_decode(a, std::vector<double>(4, 0.0), 5), Error);
    CHECK_THROWS_AS(omp_decode(a, std::vector<double>(3, 0.0), 2), Error);
  }

  TEST_CASE("omp falls back when the selected columns are dependent") {
    // Columns 0 and 1 are identical; the residual direction stays in their span
    // only if x needs both, which it cannot, so picks go 0, then 2.
    const Matrix a(2, 3, {1, 1, 0, 0, 0, 1});
    const std::vector<double> x{1.0, 1.0};
    const auto r = omp_decode(a, x, 2);
    CHECK(r.converged);
    CHECK(r.z_hat[0] == doctest::Approx(1.0));
    CHECK(r.z_hat[2] == doctest::Approx(1.0));
    const Matrix dup(2, 2, {1, 1, 0, 0});
    const auto f = omp_decode(dup, std::vector<double>{0.0, 1.0}, 2);
    CHECK(f.pinv_fallback);
    CHECK_FALSE(f.converged);
  }

  TEST_CASE("gap embedding switches to the identity at d >= m") {
    CHECK(gap_embedding(8, 8, 1) == Matrix::identity(8));
    const Matrix p = gap_embedding(10, 8, 1);
    CHECK(p.rows() == 10);
    CHECK(coherence(gram(p, p)).mu == 0.0);
    CHECK(gap_embedding(6, 8, 1) == gaussian_unit_matrix(6, 8, 1));
  }

  TEST_CASE("default ladder") {
    CHECK(default_gap_ladder(512) == std::vector<std::size_t>{8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512});
    CHECK(default_gap_ladder(20) == std::vector<std::size_t>{8, 12, 16, 20});
  }

  TEST_CASE("gap experiment: k = 1 has no gap, d = m always succeeds") {
    GapOptions o{.m = 256, .k = 1, .epsilon = 0.5, .trials = 10, .seed = 5, .ladder = {}};
    const auto rows = gap_experiment(o);
    REQUIRE(rows.back().d == 256);
    CHECK(rows.back().omp_success() == 1.0);
    CHECK(rows.back().linear_success() == 1.0);
    bool both_small = false;
    for (const auto& r : rows)
      if (r.d < 256 && r.omp_success() >= 0.9 && r.linear_success() >= 0.9) both_small = true;
    CHECK(both_small);
  }

  TEST_CASE("gap experiment is reproducible") {
    GapOptions o{.m = 48, .k = 3, .epsilon = 0.5, .trials = 4, .seed = 9, .ladder = {8, 16, 32, 48}};
    const auto a = gap_experiment(o);
    const auto b = gap_experiment(o);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].omp_successes == b[i].omp_successes);
      CHECK(a[i].linear_successes == b[i].linear_successes);
    }
  }
}
