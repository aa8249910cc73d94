#include "superpose/superpose.h"

#include <cstring>
#include <string>

#include "superpose/baseline.hpp"
#include "superpose/constructions.hpp"
#include "superpose/geometry.hpp"
#include "superpose/interference.hpp"
#include "superpose/matrix_io.hpp"
#include "superpose/recovery.hpp"
#include "superpose/serialize.hpp"
#include "superpose/threshold.hpp"

struct sp_matrix {
  superpose::Matrix m;
};

namespace {

using superpose::ErrorKind;
using superpose::Matrix;

thread_local std::string last_error;

sp_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Dimension: return SP_ERR_DIMENSION;
    case ErrorKind::Parameter: return SP_ERR_PARAMETER;
    case ErrorKind::Degenerate: return SP_ERR_DEGENERATE;
    case ErrorKind::Singular: return SP_ERR_SINGULAR;
    case ErrorKind::Construction: return SP_ERR_CONSTRUCTION;
    case ErrorKind::Guard: return SP_ERR_GUARD;
    case ErrorKind::Precondition: return SP_ERR_PRECONDITION;
    case ErrorKind::Contract: return SP_ERR_CONTRACT;
    case ErrorKind::Parse: return SP_ERR_PARSE;
    case ErrorKind::Io: return SP_ERR_IO;
  }
  return SP_ERR_INTERNAL;
}

template <class F>
sp_status guarded(F&& f) noexcept {
  try {
    f();
    return SP_OK;
  } catch (const superpose::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return SP_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return SP_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (!p) superpose::fail(ErrorKind::Parameter, std::string(name) + " must not be null");
}

const Matrix& mat(const sp_matrix* m, const char* name) {
  need(m, name);
  return m->m;
}

char* dup(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sp_matrix* wrap(Matrix m) { return new sp_matrix{std::move(m)}; }

std::optional<std::vector<double>> offsets(const double* offset, std::size_t n) {
  if (!offset) return std::nullopt;
  return std::vector<double>(offset, offset + n);
}

}  // namespace

extern "C" {

const char* sp_last_error(void) { return last_error.c_str(); }

const char* sp_status_name(sp_status s) {
  switch (s) {
    case SP_OK: return "ok";
    case SP_ERR_DIMENSION: return "dimension";
    case SP_ERR_PARAMETER: return "parameter";
    case SP_ERR_DEGENERATE: return "degenerate";
    case SP_ERR_SINGULAR: return "singular";
    case SP_ERR_CONSTRUCTION: return "construction";
    case SP_ERR_GUARD: return "guard";
    case SP_ERR_PRECONDITION: return "precondition";
    case SP_ERR_CONTRACT: return "contract";
    case SP_ERR_PARSE: return "parse";
    case SP_ERR_IO: return "io";
    case SP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void sp_string_free(char* s) { delete[] s; }

sp_status sp_matrix_create(size_t rows, size_t cols, const double* entries, sp_matrix** out) {
  return guarded([&] {
    need(out, "out");
    if (rows * cols > 0) need(entries, "entries");
    *out = wrap(Matrix(rows, cols, std::vector<double>(entries, entries + rows * cols)));
  });
}

sp_status sp_matrix_identity(size_t n, sp_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(Matrix::identity(n));
  });
}

void sp_matrix_free(sp_matrix* m) { delete m; }
size_t sp_matrix_rows(const sp_matrix* m) { return m ? m->m.rows() : 0; }
size_t sp_matrix_cols(const sp_matrix* m) { return m ? m->m.cols() : 0; }
const double* sp_matrix_data(const sp_matrix* m) { return m ? m->m.entries().data() : nullptr; }

sp_status sp_matrix_load(const char* path, sp_matrix** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap(superpose::load_matrix(path));
  });
}

sp_status sp_matrix_save(const sp_matrix* m, const char* path) {
  return guarded([&] {
    need(path, "path");
    superpose::save_matrix(mat(m, "m"), path);
  });
}

sp_status sp_matrix_normalize(const sp_matrix* m, sp_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(superpose::normalize_columns(mat(m, "m")));
  });
}

sp_status sp_gram(const sp_matrix* b, const sp_matrix* a, sp_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(superpose::gram(mat(b, "b"), mat(a, "a")));
  });
}

sp_status sp_coherence_json(const sp_matrix* c, char** json) {
  return guarded([&] {
    need(json, "json");
    *json = dup(superpose::to_json(superpose::coherence(mat(c, "c"))));
  });
}

sp_status sp_rademacher(size_t d, size_t m, uint64_t seed, sp_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(superpose::rademacher_matrix(d, m, seed));
  });
}

sp_status sp_gaussian_unit(size_t d, size_t m, uint64_t seed, sp_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(superpose::gaussian_unit_matrix(d, m, seed));
  });
}

sp_status sp_dimension_for_incoherence(size_t m, double mu, double delta, size_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = superpose::dimension_for_incoherence(m, mu, delta);
  });
}

sp_status sp_shifted_pair_dimension(size_t m, double delta, double epsilon, size_t k, size_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = superpose::shifted_pair_dimension(m, delta, epsilon, k);
  });
}

sp_status sp_shifted_pair(size_t d, size_t m, double delta, double epsilon, size_t k, uint64_t seed, sp_matrix** a,
                          sp_matrix** b, char** info) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    auto p = superpose::shifted_pair(d, m, delta, epsilon, k, seed);
    if (info) *info = dup(superpose::to_json(p));
    *a = wrap(std::move(p.a));
    *b = wrap(std::move(p.b));
  });
}

sp_status sp_worst_case_error_json(const sp_matrix* a, const sp_matrix* b, size_t k, char** json) {
  return guarded([&] {
    need(json, "json");
    *json = dup(superpose::to_json(superpose::worst_case_error(mat(a, "a"), mat(b, "b"), k)));
  });
}

sp_status sp_brute_force_error_json(const sp_matrix* a, const sp_matrix* b, size_t k, char** json) {
  return guarded([&] {
    need(json, "json");
    *json = dup(superpose::to_json(superpose::brute_force_error(mat(a, "a"), mat(b, "b"), k)));
  });
}

sp_status sp_recovery_check(const sp_matrix* a, const sp_matrix* b, size_t k, double epsilon, int* ok) {
  return guarded([&] {
    need(ok, "ok");
    *ok = superpose::recovery_check(mat(a, "a"), mat(b, "b"), k, epsilon) ? 1 : 0;
  });
}

sp_status sp_scan(const sp_scan_options* opts, char** json, char** csv) {
  return guarded([&] {
    need(opts, "opts");
    const superpose::ScanOptions o{opts->m,     opts->k,     opts->epsilon, opts->trials, opts->success_threshold,
                                   opts->d_min, opts->d_max, opts->seed};
    const auto r = superpose::min_dimension_scan(o);
    if (json) *json = dup(superpose::to_json(r));
    if (csv) *csv = dup(superpose::scan_csv(r));
  });
}

sp_status sp_interference_json(const sp_matrix* a, const sp_matrix* b, double tau, int exact_alpha, double r,
                               char** json) {
  return guarded([&] {
    need(json, "json");
    if (!(tau >= 0.0)) superpose::fail(ErrorKind::Parameter, "tau must be >= 0");
    const Matrix c = superpose::gram(mat(b, "b"), mat(a, "a"));
    const auto s = superpose::summarize_interference(c, tau, exact_alpha != 0,
                                                     r > 0.0 ? std::optional<double>(r) : std::nullopt);
    *json = dup(superpose::to_json(s));
  });
}

sp_status sp_geometry_construction_json(const sp_matrix* a, const sp_matrix* b, double delta, double tol,
                                        char** json) {
  return guarded([&] {
    need(json, "json");
    *json = dup(superpose::to_json(superpose::verify_construction_geometry(mat(a, "a"), mat(b, "b"), delta, tol)));
  });
}

sp_status sp_geometry_norm_bounded_json(const sp_matrix* a, const sp_matrix* b, double epsilon, double gamma,
                                        char** json) {
  return guarded([&] {
    need(json, "json");
    *json = dup(superpose::to_json(superpose::verify_norm_bounded_geometry(mat(a, "a"), mat(b, "b"), epsilon, gamma)));
  });
}

sp_status sp_margins_json(const sp_matrix* a, const sp_matrix* b, size_t k, char** json) {
  return guarded([&] {
    need(json, "json");
    *json = dup(superpose::to_json(superpose::separation_margins(mat(a, "a"), mat(b, "b"), k)));
  });
}

sp_status sp_brute_force_margins_json(const sp_matrix* a, const sp_matrix* b, size_t k, char** json) {
  return guarded([&] {
    need(json, "json");
    *json = dup(superpose::to_json(superpose::brute_force_margins(mat(a, "a"), mat(b, "b"), k)));
  });
}

sp_status sp_thresholds_separate(const sp_matrix* a, const sp_matrix* b, size_t k, const double* t, size_t n,
                                 int* ok) {
  return guarded([&] {
    need(ok, "ok");
    need(t, "t");
    const auto r = superpose::separation_margins(mat(a, "a"), mat(b, "b"), k);
    *ok = superpose::thresholds_separate(r, std::vector<double>(t, t + n)) ? 1 : 0;
  });
}

sp_status sp_monotone_separation(const sp_matrix* a, const sp_matrix* b, size_t k, sp_activation kind, double shift,
                                 const double* offset, size_t n, int* ok) {
  return guarded([&] {
    need(ok, "ok");
    superpose::BuiltinActivation act;
    switch (kind) {
      case SP_ACT_IDENTITY: act = superpose::BuiltinActivation::Identity; break;
      case SP_ACT_TANH: act = superpose::BuiltinActivation::Tanh; break;
      case SP_ACT_RELU: act = superpose::BuiltinActivation::Relu; break;
      default: superpose::fail(ErrorKind::Parameter, "unknown activation " + std::to_string(int(kind)));
    }
    *ok = superpose::monotone_transform_separation(mat(a, "a"), mat(b, "b"), k, superpose::make_activation(act, shift),
                                                   offsets(offset, n))
              ? 1
              : 0;
  });
}

sp_status sp_monotone_separation_fn(const sp_matrix* a, const sp_matrix* b, size_t k, sp_activation_fn fn, void* ctx,
                                    const double* offset, size_t n, int* ok) {
  return guarded([&] {
    need(ok, "ok");
    need(reinterpret_cast<const void*>(fn), "fn");
    auto sigma = [fn, ctx](double x) { return fn(x, ctx); };
    *ok = superpose::monotone_transform_separation(mat(a, "a"), mat(b, "b"), k, sigma, offsets(offset, n)) ? 1 : 0;
  });
}

sp_status sp_omp_decode_json(const sp_matrix* a, const double* x, size_t n, size_t k, char** json) {
  return guarded([&] {
    need(json, "json");
    need(x, "x");
    *json = dup(superpose::to_json(superpose::omp_decode(mat(a, "a"), std::span<const double>(x, n), k)));
  });
}

sp_status sp_l1_decode_json(const sp_matrix* a, const double* x, size_t n, size_t max_iter, double tol, char** json) {
  return guarded([&] {
    need(json, "json");
    need(x, "x");
    *json = dup(superpose::to_json(superpose::l1_decode(mat(a, "a"), std::span<const double>(x, n), max_iter, tol)));
  });
}

sp_status sp_gap(const sp_gap_options* opts, char** json, char** csv) {
  return guarded([&] {
    need(opts, "opts");
    superpose::GapOptions o;
    o.m = opts->m;
    o.k = opts->k;
    o.epsilon = opts->epsilon;
    o.trials = opts->trials;
    o.seed = opts->seed;
    if (opts->ladder) o.ladder.assign(opts->ladder, opts->ladder + opts->ladder_len);
    const auto rows = superpose::gap_experiment(o);
    if (json) *json = dup(superpose::to_json(rows));
    if (csv) *csv = dup(superpose::gap_csv(rows));
  });
}

}  // extern "C"
