#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "superpose/constructions.hpp"
#include "superpose/recovery.hpp"
#include "superpose/threshold.hpp"

using namespace superpose;

namespace {

void check_margins_equal(const MarginReport& a, const MarginReport& b, double tol) {
  REQUIRE(a.per_feature.size() == b.per_feature.size());
  for (std::size_t i = 0; i < a.per_feature.size(); ++i) {
    CHECK(std::abs(a.per_feature[i].min_active - b.per_feature[i].min_active) <= tol);
    CHECK(std::abs(a.per_feature[i].max_inactive - b.per_feature[i].max_inactive) <= tol);
    CHECK(std::abs(a.per_feature[i].margin - b.per_feature[i].margin) <= tol);
  }
  CHECK(a.separable == b.separable);
}

// A small seeded instance with a non-positive margin, found by search.
std::pair<Matrix, Matrix> non_separable_instance() {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Matrix a = oracle::uniform_matrix(3, 6, seed);
    const Matrix b = oracle::uniform_matrix(3, 6, seed + 1);
    if (!brute_force_margins(a, b, 2).separable) return {a, b};
  }
  FAIL("no non-separable instance found");
  return {Matrix::identity(1), Matrix::identity(1)};
}

}  // namespace

TEST_SUITE("threshold") {
  TEST_CASE("identity margins") {
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto r = separation_margins(Matrix::identity(4), Matrix::identity(4), k);
      for (const auto& f : r.per_feature) {
        CHECK(f.min_active == 1.0);
        CHECK(f.max_inactive == 0.0);
        CHECK(f.margin == 1.0);
      }
      CHECK(r.separable);
      REQUIRE(r.witness_thresholds);
      CHECK(thresholds_separate(r, *r.witness_thresholds));
      CHECK(thresholds_separate(r, *r.midpoint_thresholds));
    }
    check_margins_equal(brute_force_margins(Matrix::identity(5), Matrix::identity(5), 3),
                        separation_margins(Matrix::identity(5), Matrix::identity(5), 3), 0.0);
  }

  TEST_CASE("two-feature example margins are 1") {
    const auto r = separation_margins(oracle::two_feature_a(), oracle::two_feature_b(), 2);
    for (const auto& f : r.per_feature) CHECK(std::abs(f.margin - 1.0) <= 1e-12);
    check_margins_equal(r, brute_force_margins(oracle::two_feature_a(), oracle::two_feature_b(), 2), 1e-12);
  }

  TEST_CASE("hand-computed margins") {
    // C = [[1, 0.3, -0.4], [0.2, 0.8, 0.1], [-0.5, -0.6, 1.2]], A = I, B = C^T.
    const Matrix a = Matrix::identity(3);
    const Matrix b(3, 3, {1, 0.2, -0.5, 0.3, 0.8, -0.6, -0.4, 0.1, 1.2});
    const auto r = separation_margins(a, b, 2);
    // row 0: active min = 1 - 0.4; inactive max = 0.3 (only positive entries)
    CHECK(r.per_feature[0].min_active == doctest::Approx(0.6));
    CHECK(r.per_feature[0].max_inactive == doctest::Approx(0.3));
    // row 1: no negatives; inactive max = 0.2 + 0.1
    CHECK(r.per_feature[1].min_active == doctest::Approx(0.8));
    CHECK(r.per_feature[1].max_inactive == doctest::Approx(0.3));
    // row 2: active min = 1.2 - 0.6; inactive max = 0 (empty z)
    CHECK(r.per_feature[2].min_active == doctest::Approx(0.6));
    CHECK(r.per_feature[2].max_inactive == 0.0);
    check_margins_equal(r, brute_force_margins(a, b, 2), 1e-12);
  }

  TEST_CASE("seeded 4x8 Rademacher, k = 2, equals enumeration") {
    const Matrix m = rademacher_matrix(4, 8, 2024);
    check_margins_equal(separation_margins(m, m, 2), brute_force_margins(m, m, 2), 1e-12);
  }

  TEST_CASE("margins equal enumeration on 40 seeded instances") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const std::size_t m = 2 + seed % 10, d = 1 + seed % 5, k = std::min<std::size_t>(1 + seed % 4, m);
      const Matrix a = oracle::uniform_matrix(d, m, seed);
      const Matrix b = oracle::uniform_matrix(d, m, seed + 77);
      check_margins_equal(separation_margins(a, b, k), brute_force_margins(a, b, k), 1e-9);
    }
  }

  TEST_CASE("guards") {
    CHECK_THROWS_AS(brute_force_margins(Matrix::identity(17), Matrix::identity(17), 1), Error);
    CHECK_THROWS_AS(brute_force_margins(Matrix::identity(8), Matrix::identity(8), 5), Error);
    CHECK_THROWS_AS(separation_margins(Matrix::identity(3), Matrix::identity(3), 0), Error);
  }

  TEST_CASE("sqrt(m) flag") {
    CHECK_FALSE(separation_margins(Matrix::identity(16), Matrix::identity(16), 3).k_at_least_sqrt_m);
    CHECK(separation_margins(Matrix::identity(16), Matrix::identity(16), 4).k_at_least_sqrt_m);
  }

  TEST_CASE("monotone transforms on a separable instance") {
    const Matrix m = rademacher_matrix(64, 12, 3);
    const auto r = separation_margins(m, m, 2);
    REQUIRE(r.separable);
    std::vector<double> offset(12);
    for (std::size_t i = 0; i < 12; ++i) offset[i] = -(*r.midpoint_thresholds)[i];
    CHECK(monotone_transform_separation(m, m, 2, make_activation(BuiltinActivation::Identity), offset));
    CHECK(monotone_transform_separation(m, m, 2, make_activation(BuiltinActivation::Tanh)));
    CHECK(monotone_transform_separation(m, m, 2, make_activation(BuiltinActivation::Relu)));
    CHECK(monotone_transform_separation(m, m, 2, make_activation(BuiltinActivation::Identity, 3.5)));
    CHECK(monotone_transform_separation(m, m, 2, [](double x) { return std::atan(x) + 0.2; }));
    CHECK(monotone_transform_separation(m, m, 2, [](double x) { return x * x * x; }));
  }

  TEST_CASE("a bad offset is reported as failure") {
    const Matrix m = rademacher_matrix(64, 12, 3);
    CHECK_FALSE(monotone_transform_separation(m, m, 2, make_activation(BuiltinActivation::Identity),
                                              std::vector<double>(12, 5.0)));
  }

  TEST_CASE("non-separable instance fails under every monotone map") {
    const auto [a, b] = non_separable_instance();
    CHECK_FALSE(separation_margins(a, b, 2).separable);
    CHECK_FALSE(separation_margins(a, b, 2).witness_thresholds.has_value());
    CHECK_FALSE(monotone_transform_separation(a, b, 2, make_activation(BuiltinActivation::Identity)));
    CHECK_FALSE(monotone_transform_separation(a, b, 2, make_activation(BuiltinActivation::Tanh)));
    CHECK_FALSE(monotone_transform_separation(a, b, 2, make_activation(BuiltinActivation::Relu)));
    const auto r = separation_margins(a, b, 2);
    std::vector<double> offset(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) offset[i] = -r.per_feature[i].max_inactive;
    CHECK_FALSE(monotone_transform_separation(a, b, 2, make_activation(BuiltinActivation::Identity), offset));
  }

  TEST_CASE("non-monotone sigma is a contract violation") {
    const Matrix m = rademacher_matrix(64, 12, 3);
    try {
      monotone_transform_separation(m, m, 2, [](double x) { return std::sin(4 * x); });
      FAIL("expected contract error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Contract);
    }
  }

  TEST_CASE("sigma without a sign change cannot separate") {
    const Matrix m = rademacher_matrix(64, 12, 3);
    CHECK_FALSE(monotone_transform_separation(m, m, 2, [](double x) { return 2.0 + std::atan(x); }));
  }

  TEST_CASE("property: eps < 1/2 recovery gives separation at t = 1/2") {
    std::size_t passing = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const Matrix m = rademacher_matrix(96 + 8 * (seed % 5), 24, seed);
      if (!recovery_check(m, m, 2, 0.45)) continue;
      ++passing;
      const auto r = separation_margins(m, m, 2);
      CHECK(r.separable);
      CHECK(thresholds_separate(r, std::vector<double>(24, 0.5)));
    }
    CHECK(passing > 0);
  }

  TEST_CASE("property: rescaling a probe column scales its margin") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const Matrix a = oracle::uniform_matrix(4, 6, seed);
      const Matrix b = oracle::uniform_matrix(4, 6, seed + 5);
      const std::size_t col = seed % 6;
      const double c = 0.25 + double(seed) * 0.5;
      std::vector<double> e(b.entries().begin(), b.entries().end());
      for (std::size_t r = 0; r < 4; ++r) e[r * 6 + col] *= c;
      const auto base = separation_margins(a, b, 2);
      const auto scaled = separation_margins(a, Matrix(4, 6, e), 2);
      CHECK(scaled.per_feature[col].min_active == doctest::Approx(c * base.per_feature[col].min_active));
      CHECK(scaled.per_feature[col].max_inactive == doctest::Approx(c * base.per_feature[col].max_inactive));
      CHECK(scaled.per_feature[col].margin == doctest::Approx(c * base.per_feature[col].margin));
      CHECK(scaled.separable == base.separable);
    }
  }
}
