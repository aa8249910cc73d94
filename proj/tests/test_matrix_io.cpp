#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "oracles.hpp"
#include "superpose/constructions.hpp"
#include "superpose/matrix_io.hpp"

using namespace superpose;

#ifndef SUPERPOSE_FIXTURES
#error "SUPERPOSE_FIXTURES must point at tests/fixtures"
#endif

namespace {

std::string fixture(const char* name) { return std::string(SUPERPOSE_FIXTURES) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("superpose_io_" + name)).string();
}

}  // namespace

TEST_SUITE("matrix_io") {
  TEST_CASE("text and JSON round trips are exact") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Matrix g = gaussian_unit_matrix(5, 7, seed);
      CHECK(parse_matrix(format_matrix_text(g)) == g);
      CHECK(parse_matrix(format_matrix_json(g)) == g);
    }
    const Matrix odd(1, 3, {1e-300, -0.1, 123456789.125});
    CHECK(parse_matrix(format_matrix_text(odd)) == odd);
  }

  TEST_CASE("save and load through files") {
    const Matrix r = rademacher_matrix(6, 4, 3);
    const auto txt = temp_path("r.txt");
    const auto js = temp_path("r.json");
    save_matrix(r, txt);
    save_matrix(r, js);
    CHECK(load_matrix(txt) == r);
    CHECK(load_matrix(js) == r);
    std::remove(txt.c_str());
    std::remove(js.c_str());
  }

  TEST_CASE("two-feature fixtures load to the stated coordinates") {
    CHECK(load_matrix(fixture("two_feature.A.txt")) == oracle::two_feature_a());
    CHECK(load_matrix(fixture("two_feature.B.txt")) == oracle::two_feature_b());
  }

  TEST_CASE("short row reports its line number") {
    try {
      load_matrix(fixture("bad_row.txt"));
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
  }

  TEST_CASE("malformed inputs") {
    auto parse_kind = [](const std::string& s) {
      try {
        parse_matrix(s);
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::Io;  // sentinel: no error
    };
    CHECK(parse_kind("") == ErrorKind::Parse);
    CHECK(parse_kind("2\n1 2\n") == ErrorKind::Parse);
    CHECK(parse_kind("1 2\n1 x\n") == ErrorKind::Parse);
    CHECK(parse_kind("1 2\n1 2 3\n") == ErrorKind::Parse);
    CHECK(parse_kind("2 1\n1\n") == ErrorKind::Parse);
    CHECK(parse_kind("1 1\n1\n2\n") == ErrorKind::Parse);
    CHECK(parse_kind("1 1\nnan\n") == ErrorKind::Parse);
    CHECK(parse_kind("{\"rows\": 2, \"cols\": 2, \"entries\": [1, 2, 3]}") == ErrorKind::Parse);
    CHECK(parse_kind("{\"rows\": 1}") == ErrorKind::Parse);
    CHECK(parse_kind("{broken") == ErrorKind::Parse);
    CHECK(parse_kind("0 3\n") == ErrorKind::Parse);
  }

  TEST_CASE("missing file is an io error") {
    try {
      load_matrix("/nonexistent/dir/m.txt");
      FAIL("expected io error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Io);
    }
  }

  TEST_CASE("17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.5) == "-0.5");
  }
}
