/*
 * Copyright 2026 The CCEQR Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libcceqr.
 *
 * Matrices are dense, column-major and zero-indexed. Every object returned
 * through an out-pointer is owned by the caller and released with the
 * matching *_destroy function. Functions that can fail return a
 * cceqr_status; on failure cceqr_last_error() describes the problem (the
 * message is per-thread and valid until the next failing call on the same
 * thread).
 */

#ifndef CCEQR_CCEQR_H
#define CCEQR_CCEQR_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(CCEQR_BUILDING_LIBRARY)
#    define CCEQR_API __declspec(dllexport)
#  else
#    define CCEQR_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__)
#  define CCEQR_API __attribute__((visibility("default")))
#else
#  define CCEQR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cceqr_status {
  CCEQR_OK = 0,
  CCEQR_ERR_ARGUMENT = 1,   /* value outside its documented range */
  CCEQR_ERR_CONTRACT = 2,   /* operands not conformal, null pointer, index out of range */
  CCEQR_ERR_IO = 3,
  CCEQR_ERR_FORMAT = 4,     /* malformed matrix file */
  CCEQR_ERR_DEGENERATE = 5, /* mixture kernel lost rank */
  CCEQR_ERR_INVARIANT = 6,  /* internal consistency check failed */
  CCEQR_ERR_ALLOC = 7,
  CCEQR_ERR_INTERNAL = 8
} cceqr_status;

typedef struct cceqr_matrix cceqr_matrix;
typedef struct cceqr_selection cceqr_selection;

CCEQR_API const char* cceqr_version(void);
CCEQR_API const char* cceqr_status_string(cceqr_status status);
CCEQR_API const char* cceqr_last_error(void);

/* ---- matrices ---- */

CCEQR_API cceqr_status cceqr_matrix_create(int64_t rows, int64_t cols, cceqr_matrix** out);
/* Copies rows * cols doubles in column-major order. */
CCEQR_API cceqr_status cceqr_matrix_from_data(int64_t rows, int64_t cols, const double* data,
                                              cceqr_matrix** out);
CCEQR_API void cceqr_matrix_destroy(cceqr_matrix* m);
CCEQR_API int64_t cceqr_matrix_rows(const cceqr_matrix* m);
CCEQR_API int64_t cceqr_matrix_cols(const cceqr_matrix* m);
/* Column-major storage, leading dimension = rows. */
CCEQR_API double* cceqr_matrix_data(cceqr_matrix* m);
CCEQR_API const double* cceqr_matrix_const_data(const cceqr_matrix* m);

/* Binary format: "PQR1", int64 rows, int64 cols (little-endian), then the
 * doubles column by column. */
CCEQR_API cceqr_status cceqr_matrix_read(const char* path, cceqr_matrix** out);
CCEQR_API cceqr_status cceqr_matrix_write(const cceqr_matrix* m, const char* path);
/* Whitespace-separated text, one row per line; '#' lines are skipped. */
CCEQR_API cceqr_status cceqr_matrix_read_text(const char* path, cceqr_matrix** out);

/* ---- generators ---- */

CCEQR_API cceqr_status cceqr_gen_gaussian(int64_t m, int64_t n, uint64_t seed,
                                          cceqr_matrix** out);
CCEQR_API cceqr_status cceqr_gen_hadamard(int kexp, int rexp, cceqr_matrix** out);

typedef enum cceqr_mixture_method {
  CCEQR_MIXTURE_AUTO = 0,
  CCEQR_MIXTURE_DENSE = 1,
  CCEQR_MIXTURE_COMPRESSED = 2
} cceqr_mixture_method;

typedef struct cceqr_mixture_spec {
  int64_t m;
  int64_t n;
  double ell;
  double sigma2;
  uint64_t seed;
  cceqr_mixture_method method;
  int64_t oversample;
} cceqr_mixture_spec;

/* m = 20, n = 1000, ell = 6, sigma2 = 5, seed = 0, auto, oversample = 5. */
CCEQR_API void cceqr_mixture_spec_init(cceqr_mixture_spec* spec);
/* labels may be NULL; otherwise it receives n component indices. */
CCEQR_API cceqr_status cceqr_gen_mixture(const cceqr_mixture_spec* spec, cceqr_matrix** out,
                                         int64_t* labels);

/* ---- column selection ---- */

typedef enum cceqr_algorithm {
  CCEQR_ALGO_CCEQR_CSSP = 0,
  CCEQR_ALGO_CCEQR_FULL = 1,
  CCEQR_ALGO_GB = 2,
  CCEQR_ALGO_GB_NAIVE = 3
} cceqr_algorithm;

CCEQR_API const char* cceqr_algorithm_name(cceqr_algorithm algo);
CCEQR_API cceqr_status cceqr_parse_algorithm(const char* name, cceqr_algorithm* out);

/* CCEQR selection of k columns. With full != 0 the selection also carries
 * the complete R = Q^T A(:, p). */
CCEQR_API cceqr_status cceqr_select(const cceqr_matrix* a, int64_t k, double rho, int full,
                                    cceqr_selection** out);
/* Golub-Businger pivoted QR, k steps; naive != 0 recomputes every norm. */
CCEQR_API cceqr_status cceqr_gb(const cceqr_matrix* a, int64_t k, int naive,
                                cceqr_selection** out);
CCEQR_API void cceqr_selection_destroy(cceqr_selection* s);

CCEQR_API int64_t cceqr_selection_k(const cceqr_selection* s);
CCEQR_API int64_t cceqr_selection_cycles(const cceqr_selection* s);
CCEQR_API int64_t cceqr_selection_max_tracked(const cceqr_selection* s);
/* Full column permutation (length n). */
CCEQR_API const int64_t* cceqr_selection_perm(const cceqr_selection* s, int64_t* length);
/* Columns committed in each cycle (length = cycles). */
CCEQR_API const int64_t* cceqr_selection_commits(const cceqr_selection* s, int64_t* length);
/* Copy of R when the run produced one (full CCEQR, GB); CCEQR_ERR_ARGUMENT otherwise. */
CCEQR_API cceqr_status cceqr_selection_r(const cceqr_selection* s, cceqr_matrix** out);
/* Q^T A(:, p) from the stored reflectors; a must be the selected matrix. */
CCEQR_API cceqr_status cceqr_selection_reconstruct_r(const cceqr_selection* s,
                                                     const cceqr_matrix* a, cceqr_matrix** out);

/* ---- diagnostics ---- */

CCEQR_API cceqr_status cceqr_check_gb_form(const cceqr_matrix* r, int64_t k, double tol,
                                           int* ok);

typedef enum cceqr_equivalence {
  CCEQR_EQUIVALENT = 0,
  CCEQR_MISMATCH = 1,
  CCEQR_INCONCLUSIVE = 2
} cceqr_equivalence;

CCEQR_API cceqr_status cceqr_verify_equivalence(const cceqr_matrix* a, int64_t k, double rho,
                                                cceqr_equivalence* out);

typedef struct cceqr_rank_metrics {
  double sigma_ratio;
  double residual_ratio;
  double q_bound;
  int zero_residual;
  int bounds_ok;
} cceqr_rank_metrics;

CCEQR_API cceqr_status cceqr_rank_reveal(const cceqr_matrix* a, const int64_t* perm,
                                         int64_t perm_length, int64_t k,
                                         cceqr_rank_metrics* out);

/* fractions receives count values; zero_matrix may be NULL. */
CCEQR_API cceqr_status cceqr_norm_mass_cdf(const cceqr_matrix* a, const double* quantiles,
                                           int64_t count, double* fractions, int* zero_matrix);

typedef struct cceqr_run_options {
  cceqr_algorithm algorithm;
  int64_t k;
  double rho;
  int repetitions;
  int verify;
} cceqr_run_options;

/* cceqr-cssp, k = 1, rho = 0.05, one repetition, no verification. */
CCEQR_API void cceqr_run_options_init(cceqr_run_options* options);

typedef struct cceqr_run_report {
  cceqr_algorithm algorithm;
  int64_t m;
  int64_t n;
  int64_t k;
  double rho;
  double seconds;
  int64_t cycles;
  int64_t max_tracked;
  int gb_ok;
  int has_equivalence;
  cceqr_equivalence equivalence;
  int has_metrics;
  cceqr_rank_metrics metrics;
} cceqr_run_report;

CCEQR_API cceqr_status cceqr_run_report_compute(const cceqr_matrix* a,
                                                const cceqr_run_options* options,
                                                cceqr_run_report* out);

#ifdef __cplusplus
}
#endif

#endif /* CCEQR_CCEQR_H */
