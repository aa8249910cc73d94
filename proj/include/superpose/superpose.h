#ifndef SUPERPOSE_H
#define SUPERPOSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef SUPERPOSE_BUILDING
#    define SP_API __declspec(dllexport)
#  else
#    define SP_API __declspec(dllimport)
#  endif
#else
#  define SP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns one of these. On failure, sp_last_error() holds
   a message for the calling thread until its next failing call. */
typedef enum sp_status {
  SP_OK = 0,
  SP_ERR_DIMENSION = 1,
  SP_ERR_PARAMETER = 2,
  SP_ERR_DEGENERATE = 3,
  SP_ERR_SINGULAR = 4,
  SP_ERR_CONSTRUCTION = 5,
  SP_ERR_GUARD = 6,
  SP_ERR_PRECONDITION = 7,
  SP_ERR_CONTRACT = 8,
  SP_ERR_PARSE = 9,
  SP_ERR_IO = 10,
  SP_ERR_INTERNAL = 11
} sp_status;

typedef struct sp_matrix sp_matrix;

SP_API const char* sp_last_error(void);
SP_API const char* sp_status_name(sp_status s);

/* Strings returned through char** out-parameters are owned by the caller. */
SP_API void sp_string_free(char* s);

/* Matrices: row-major, immutable once created. */
SP_API sp_status sp_matrix_create(size_t rows, size_t cols, const double* entries, sp_matrix** out);
SP_API sp_status sp_matrix_identity(size_t n, sp_matrix** out);
SP_API void sp_matrix_free(sp_matrix* m);
SP_API size_t sp_matrix_rows(const sp_matrix* m);
SP_API size_t sp_matrix_cols(const sp_matrix* m);
SP_API const double* sp_matrix_data(const sp_matrix* m);
SP_API sp_status sp_matrix_load(const char* path, sp_matrix** out);
/* Text format unless the path ends in ".json". */
SP_API sp_status sp_matrix_save(const sp_matrix* m, const char* path);
SP_API sp_status sp_matrix_normalize(const sp_matrix* m, sp_matrix** out);

/* C = B^T A. */
SP_API sp_status sp_gram(const sp_matrix* b, const sp_matrix* a, sp_matrix** out);
SP_API sp_status sp_coherence_json(const sp_matrix* c, char** json);

SP_API sp_status sp_rademacher(size_t d, size_t m, uint64_t seed, sp_matrix** out);
SP_API sp_status sp_gaussian_unit(size_t d, size_t m, uint64_t seed, sp_matrix** out);
SP_API sp_status sp_dimension_for_incoherence(size_t m, double mu, double delta, size_t* out);
SP_API sp_status sp_shifted_pair_dimension(size_t m, double delta, double epsilon, size_t k, size_t* out);
/* info (optional) receives the construction metadata as JSON. */
SP_API sp_status sp_shifted_pair(size_t d, size_t m, double delta, double epsilon, size_t k, uint64_t seed,
                                 sp_matrix** a, sp_matrix** b, char** info);

SP_API sp_status sp_worst_case_error_json(const sp_matrix* a, const sp_matrix* b, size_t k, char** json);
SP_API sp_status sp_brute_force_error_json(const sp_matrix* a, const sp_matrix* b, size_t k, char** json);
SP_API sp_status sp_recovery_check(const sp_matrix* a, const sp_matrix* b, size_t k, double epsilon, int* ok);

typedef struct sp_scan_options {
  size_t m;
  size_t k;
  double epsilon;
  size_t trials;
  double success_threshold;
  size_t d_min;
  size_t d_max;
  uint64_t seed;
} sp_scan_options;

/* Either output may be NULL. csv has header "d,successes,trials". */
SP_API sp_status sp_scan(const sp_scan_options* opts, char** json, char** csv);

/* r <= 0 omits the Turan floor. */
SP_API sp_status sp_interference_json(const sp_matrix* a, const sp_matrix* b, double tau, int exact_alpha, double r,
                                      char** json);

SP_API sp_status sp_geometry_construction_json(const sp_matrix* a, const sp_matrix* b, double delta, double tol,
                                               char** json);
SP_API sp_status sp_geometry_norm_bounded_json(const sp_matrix* a, const sp_matrix* b, double epsilon, double gamma,
                                               char** json);

SP_API sp_status sp_margins_json(const sp_matrix* a, const sp_matrix* b, size_t k, char** json);
SP_API sp_status sp_brute_force_margins_json(const sp_matrix* a, const sp_matrix* b, size_t k, char** json);
SP_API sp_status sp_thresholds_separate(const sp_matrix* a, const sp_matrix* b, size_t k, const double* t, size_t n,
                                        int* ok);

typedef enum sp_activation { SP_ACT_IDENTITY = 0, SP_ACT_TANH = 1, SP_ACT_RELU = 2 } sp_activation;
typedef double (*sp_activation_fn)(double x, void* ctx);

/* offset may be NULL (derived from sigma's zero crossing); otherwise n == m. */
SP_API sp_status sp_monotone_separation(const sp_matrix* a, const sp_matrix* b, size_t k, sp_activation kind,
                                        double shift, const double* offset, size_t n, int* ok);
SP_API sp_status sp_monotone_separation_fn(const sp_matrix* a, const sp_matrix* b, size_t k, sp_activation_fn fn,
                                           void* ctx, const double* offset, size_t n, int* ok);

SP_API sp_status sp_omp_decode_json(const sp_matrix* a, const double* x, size_t n, size_t k, char** json);
SP_API sp_status sp_l1_decode_json(const sp_matrix* a, const double* x, size_t n, size_t max_iter, double tol,
                                   char** json);

typedef struct sp_gap_options {
  size_t m;
  size_t k;
  double epsilon;
  size_t trials;
  uint64_t seed;
  const size_t* ladder; /* NULL for the default ladder */
  size_t ladder_len;
} sp_gap_options;

/* Either output may be NULL. csv has header "d,omp_success,linear_success,trials". */
SP_API sp_status sp_gap(const sp_gap_options* opts, char** json, char** csv);

#ifdef __cplusplus
}
#endif

#endif
