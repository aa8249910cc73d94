#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "superpose/constructions.hpp"
#include "superpose/core.hpp"

using namespace superpose;

TEST_SUITE("core") {
  TEST_CASE("matrix rejects bad shapes and non-finite entries") {
    CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), Error);
    CHECK_THROWS_AS(Matrix(1, 2, {1.0, std::nan("")}), Error);
    CHECK_THROWS_AS(Matrix(1, 1, {INFINITY}), Error);
    try {
      Matrix(2, 3, {1.0});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Dimension);
    }
  }

  TEST_CASE("sparse vector invariants") {
    SparseVector z(5, {1, 3}, {0.5, -1.0});
    CHECK(z.to_dense() == std::vector<double>{0.0, 0.5, 0.0, -1.0, 0.0});
    CHECK_THROWS_AS(SparseVector(5, {3, 1}, {0.5, 0.5}), Error);   // unsorted
    CHECK_THROWS_AS(SparseVector(5, {1, 1}, {0.5, 0.5}), Error);   // duplicate
    CHECK_THROWS_AS(SparseVector(5, {5}, {0.5}), Error);           // out of range
    CHECK_THROWS_AS(SparseVector(5, {1}, {1.5}), Error);           // |value| > 1
    CHECK_THROWS_AS(SparseVector(5, {1}, {0.5}, SparseMode::Binary), Error);
    auto zb = SparseVector::binary(4, {0, 2});
    CHECK(zb.to_dense() == std::vector<double>{1.0, 0.0, 1.0, 0.0});
  }

  TEST_CASE("gram of the two-feature example is the identity") {
    const Matrix c = gram(oracle::two_feature_b(), oracle::two_feature_a());
    REQUIRE(c.rows() == 2);
    CHECK(std::abs(c(0, 0) - 1.0) <= 1e-12);
    CHECK(std::abs(c(1, 1) - 1.0) <= 1e-12);
    CHECK(std::abs(c(0, 1)) <= 1e-12);
    CHECK(std::abs(c(1, 0)) <= 1e-12);
  }

  TEST_CASE("gram identity case") {
    CHECK(gram(Matrix::identity(3), Matrix::identity(3)) == Matrix::identity(3));
  }

  TEST_CASE("gram matches the triple-loop reference") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const Matrix b = oracle::uniform_matrix(3, 2, seed);
      const Matrix a = oracle::uniform_matrix(3, 2, seed + 100);
      const auto ref = oracle::gram(b, a);
      const Matrix c = gram(b, a);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(c(i, j) - ref[i][j]) <= 1e-12);
    }
  }

  TEST_CASE("gram shape mismatch names both shapes") {
    try {
      gram(Matrix::zeros(2, 3), Matrix::zeros(3, 3));
      FAIL("expected a dimension error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Dimension);
      const std::string msg = e.what();
      CHECK(msg.find("2x3") != std::string::npos);
      CHECK(msg.find("3x3") != std::string::npos);
    }
  }

  TEST_CASE("coherence basics") {
    const auto s = coherence(Matrix::identity(4));
    CHECK(s.mu == 0.0);
    CHECK(s.diag_min == 1.0);
    CHECK(s.diag_max == 1.0);
    const auto f = coherence(gram(oracle::two_feature_b(), oracle::two_feature_a()));
    CHECK(f.mu <= 1e-12);
    CHECK_THROWS_AS(coherence(Matrix::identity(1)), Error);
    CHECK_THROWS_AS(coherence(Matrix::zeros(2, 3)), Error);
  }

  TEST_CASE("coherence equals an exhaustive pair scan on a Rademacher gram") {
    const Matrix m = rademacher_matrix(16, 64, 11);
    const auto ref = oracle::gram(m, m);
    const auto s = coherence(gram(m, m));
    CHECK(s.mu == oracle::max_offdiag_abs(ref));
    CHECK(std::abs(std::abs(ref[s.argmax_pair.first][s.argmax_pair.second]) - s.mu) <= 1e-15);
    CHECK(s.argmax_pair.first != s.argmax_pair.second);
  }

  TEST_CASE("coherence ties break to the lexicographically smallest pair") {
    const Matrix c(3, 3, {1, 0.5, -0.5, 0.5, 1, 0.5, -0.5, 0.5, 1});
    const auto s = coherence(c);
    CHECK(s.argmax_pair == std::pair<std::size_t, std::size_t>{0, 1});
  }

  TEST_CASE("normalize columns") {
    const Matrix n = normalize_columns(Matrix(2, 1, {3.0, 4.0}));
    CHECK(std::abs(n(0, 0) - 0.6) <= 1e-12);
    CHECK(std::abs(n(1, 0) - 0.8) <= 1e-12);

    const Matrix unit = normalize_columns(Matrix::identity(3));
    for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(unit.entries()[i] - Matrix::identity(3).entries()[i]) <= 1e-12);

    const Matrix r = normalize_columns(oracle::uniform_matrix(7, 9, 5));
    for (std::size_t c = 0; c < r.cols(); ++c) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.rows(); ++i) s += r(i, c) * r(i, c);
      CHECK(std::abs(std::sqrt(s) - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("normalize columns reports the zero column") {
    try {
      normalize_columns(Matrix(2, 3, {1, 0, 2, 1, 0, 2}));
      FAIL("expected singular-column error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Singular);
      CHECK(std::string(e.what()).find("column 1") != std::string::npos);
    }
  }

  TEST_CASE("property: gram transpose symmetry") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const std::size_t d = 1 + seed % 6, m = 2 + seed % 5;
      const Matrix a = oracle::uniform_matrix(d, m, seed);
      const Matrix b = oracle::uniform_matrix(d, m, seed + 1000);
      const Matrix ba = gram(b, a), ab = gram(a, b);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) CHECK(std::abs(ba(i, j) - ab(j, i)) <= 1e-12);
    }
  }

  TEST_CASE("property: gram diagonal equals squared column norms") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const Matrix m = oracle::uniform_matrix(4, 6, seed);
      const auto s = coherence(gram(m, m));
      double lo = INFINITY, hi = -INFINITY;
      for (std::size_t c = 0; c < m.cols(); ++c) {
        double n = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) n += m(r, c) * m(r, c);
        lo = std::min(lo, n);
        hi = std::max(hi, n);
      }
      CHECK(std::abs(s.diag_min - lo) <= 1e-12);
      CHECK(std::abs(s.diag_max - hi) <= 1e-12);
    }
  }

  TEST_CASE("property: coherence invariant under a shared column permutation") {
    std::mt19937_64 eng(99);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const std::size_t d = 5, m = 8;
      const Matrix a = oracle::uniform_matrix(d, m, seed);
      const Matrix b = oracle::uniform_matrix(d, m, seed + 50);
      std::vector<std::size_t> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), eng);
      std::vector<std::vector<double>> pa, pb;
      for (auto p : perm) {
        pa.push_back(a.column(p));
        pb.push_back(b.column(p));
      }
      const double mu = coherence(gram(b, a)).mu;
      const double mu_p = coherence(gram(Matrix::from_columns(pb), Matrix::from_columns(pa))).mu;
      CHECK(std::abs(mu - mu_p) <= 1e-12);
    }
  }
}
