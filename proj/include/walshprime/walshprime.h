/*
 * walshprime C API.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns a wp_status;
 * on failure a message for the calling thread is available from
 * wp_last_error_message() until the next failing call on that thread.
 *
 * Walsh conventions: eps_j = 1 - 2 x_j, w_S(x) = (-1)^popcount(x & S).
 * The forward transform carries 2^-n, the inverse carries no factor.
 */
#ifndef WALSHPRIME_H
#define WALSHPRIME_H

#include <stddef.h>
#include <stdint.h>

#if defined(WALSHPRIME_BUILDING_LIBRARY)
#define WP_API __attribute__((visibility("default")))
#else
#define WP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wp_status {
  WP_OK = 0,
  WP_ERR_INVALID_ARGUMENT = 1,
  WP_ERR_CAPACITY = 2,
  WP_ERR_DIMENSION_MISMATCH = 3,
  WP_ERR_OUT_OF_RANGE = 4,
  WP_ERR_IO = 5,
  WP_ERR_DEGENERATE_INPUT = 6,
  WP_ERR_NOT_BOOLEAN = 7,
  WP_ERR_CHECKSUM = 8,
  WP_ERR_INTERNAL = 99
} wp_status;

/* A dense array of 2^n doubles: a cube function, a spectrum, a von Mangoldt
 * table or a LambdaTilde table depending on how it was produced. */
typedef struct wp_vector wp_vector;

/* One von Mangoldt table plus lazily computed transforms and LambdaTilde. */
typedef struct wp_pipeline wp_pipeline;

typedef struct wp_limits {
  uint32_t max_n;          /* default 26 */
  int allow_over_cap;      /* required for max_n > 26 (hard limit 28) */
  uint64_t segment_size;   /* sieve segment, default 2^20 */
} wp_limits;

WP_API void wp_limits_default(wp_limits* out);
WP_API uint32_t wp_max_dimension_for_memory(uint64_t mebibytes);

WP_API const char* wp_version(void);
WP_API const char* wp_status_name(wp_status status);
WP_API const char* wp_last_error_message(void);

/* ---- cube ---------------------------------------------------------------- */

/* values may be NULL for a zero vector; otherwise count must equal 2^n. */
WP_API wp_status wp_vector_create(uint32_t n, const double* values, uint64_t count, const wp_limits* limits,
                                  wp_vector** out);
WP_API void wp_vector_destroy(wp_vector* v);
WP_API uint32_t wp_vector_dim(const wp_vector* v);
WP_API uint64_t wp_vector_size(const wp_vector* v);
WP_API const double* wp_vector_data(const wp_vector* v);

WP_API wp_status wp_wht_forward(const wp_vector* f, wp_vector** out_spectrum);
WP_API wp_status wp_wht_inverse(const wp_vector* spectrum, wp_vector** out_f);
/* mass must hold n + 1 doubles. */
WP_API wp_status wp_level_profile(const wp_vector* spectrum, double* mass, size_t capacity);
WP_API wp_status wp_inner_product(const wp_vector* f, const wp_vector* g, double* normalized, double* unnormalized);

/* ---- arithmetic ------------------------------------------------------------ */

WP_API wp_status wp_sieve(uint32_t n, const wp_limits* limits, wp_vector** out_table);
WP_API wp_status wp_chebyshev_psi(const wp_vector* table, uint64_t u, double* out);
WP_API wp_status wp_pair_correlation(const wp_vector* table, uint32_t j, uint32_t k, double* sum, double* ratio);
WP_API wp_status wp_pair_correlation_max(const wp_vector* table, uint32_t* j, uint32_t* k, double* ratio);

/* ---- LambdaTilde ----------------------------------------------------------- */

WP_API wp_status wp_lambda_tilde(const wp_vector* table, wp_vector** out);
WP_API wp_status wp_lambda_tilde_spectrum_via_identity(const wp_vector* lambda_spectrum, wp_vector** out);

typedef struct wp_moments {
  double mean;
  double l1;
  double l2;
  double l2_ratio;
} wp_moments;

WP_API wp_status wp_lambda_tilde_moments(const wp_vector* lambda_tilde, wp_moments* out);

/* ---- monotone zoo ------------------------------------------------------------ */

/* Parses a zoo spec string ("majority", "tribes:w=4", "dnf:m=32,w=6,seed=7",
 * optional ",odd") for dimension n and materializes it. force_odd applies the
 * odd slice regardless of the spec string. canonical (may be NULL) receives the
 * canonical spec string. */
WP_API wp_status wp_zoo_materialize(const char* spec, uint32_t n, uint64_t default_seed, int force_odd,
                                    const wp_limits* limits, wp_vector** out, char* canonical,
                                    size_t canonical_capacity);
WP_API uint32_t wp_zoo_default_count(uint32_t n);
WP_API wp_status wp_zoo_default_spec(uint32_t n, uint32_t index, int odd, uint64_t seed, char* buffer,
                                     size_t capacity);

typedef struct wp_monotonicity {
  int monotone;
  uint64_t edges_checked;
  uint64_t lower; /* first violating edge, valid when !monotone */
  uint64_t upper;
  uint32_t bit;
} wp_monotonicity;

/* samples == 0 selects the exhaustive edge scan. */
WP_API wp_status wp_monotonicity_check(const wp_vector* f, uint64_t samples, uint64_t seed, wp_monotonicity* out);

typedef struct wp_tail_report {
  double K;
  uint32_t cutoff;
  double tail;
  double bound;
  double total_influence_fw;
  double degree1_sum;
} wp_tail_report;

WP_API wp_status wp_tail_report_compute(const wp_vector* spectrum, double K, wp_tail_report* out);

typedef struct wp_influence_check {
  double lhs;
  double rhs;
  double gap;
  double max_degree1;
  int holds; /* at tolerance 1e-10 */
} wp_influence_check;

WP_API wp_status wp_influence_identity_check(const wp_vector* spectrum, wp_influence_check* out);

/* ---- analysis ---------------------------------------------------------------- */

/* Takes a copy of the table. */
WP_API wp_status wp_pipeline_create(const wp_vector* table, const wp_limits* limits, wp_pipeline** out);
/* Loads the table for n from cache_dir, sieving and writing the cache on a
 * miss unless no_sieve is set. cache_hit / repaired may be NULL. */
WP_API wp_status wp_pipeline_open(const char* cache_dir, uint32_t n, const wp_limits* limits, int no_sieve,
                                  int* cache_hit, int* repaired, wp_pipeline** out);
WP_API void wp_pipeline_destroy(wp_pipeline* p);
WP_API uint32_t wp_pipeline_dim(const wp_pipeline* p);
/* Borrowed views owned by the pipeline. */
WP_API const wp_vector* wp_pipeline_table(const wp_pipeline* p);
WP_API wp_status wp_pipeline_lambda_spectrum(const wp_pipeline* p, const wp_vector** out);
WP_API wp_status wp_pipeline_lambda_tilde(const wp_pipeline* p, const wp_vector** out);
WP_API wp_status wp_pipeline_moments(const wp_pipeline* p, wp_moments* out);

typedef struct wp_correlation_report {
  uint32_t n;
  double K;
  double mean_f;
  double sum_lambda_f;
  double theorem_ratio;
  double pairing_tilde;
  double mean_tilde;
  double mean_term;
  double low_term;
  double high_term;
  double decomposition_residual;
  double high_tail_mass;
  double tilde_l2;
  double cs_bound;
  double ineq32_lhs;
  double ineq32_rhs;
  double tilde_0;
  double tilde_0_predicted;
  double tilde_j_mean;
  double tilde_0j_mean;
  int hypotheses_checked;
  int monotone;
  int odd_supported;
  char warnings[512]; /* '; '-separated, NUL-terminated */
} wp_correlation_report;

WP_API wp_status wp_pipeline_correlate(const wp_pipeline* p, const wp_vector* f, double K, int attested,
                                       uint64_t seed, wp_correlation_report* out);

typedef struct wp_low_level_mass {
  uint32_t n;
  uint32_t n0;
  double mass;
  uint64_t largest_mask;
  double largest_coefficient;
} wp_low_level_mass;

/* per_level (may be NULL) receives n0 + 1 values. */
WP_API wp_status wp_pipeline_low_level_mass(const wp_pipeline* p, uint32_t n0, wp_low_level_mass* out,
                                            double* per_level, size_t per_level_capacity);

typedef enum wp_trend_metric {
  WP_METRIC_LOW_LEVEL_MASS = 0,
  WP_METRIC_THEOREM_RATIO = 1,
  WP_METRIC_L2_RATIO = 2,
  WP_METRIC_PAIR_CORRELATION_MAX = 3
} wp_trend_metric;

typedef enum wp_trend {
  WP_TREND_FLAT = 0,
  WP_TREND_NON_INCREASING = 1,
  WP_TREND_NON_DECREASING = 2,
  WP_TREND_MIXED = 3
} wp_trend;

WP_API wp_status wp_metric_from_name(const char* name, wp_trend_metric* out);
WP_API const char* wp_metric_name(wp_trend_metric metric);
WP_API const char* wp_trend_name(wp_trend trend);

/* One value per n in ns. spec is used by WP_METRIC_THEOREM_RATIO only.
 * cache_dir may be NULL (sieve in memory). */
WP_API wp_status wp_trend_table(wp_trend_metric metric, uint32_t n0, const char* spec, double K, uint64_t seed,
                                const uint32_t* ns, size_t count, const wp_limits* limits, const char* cache_dir,
                                int no_sieve, double* values, wp_trend* trend);

/* ---- persistence --------------------------------------------------------------- */

WP_API wp_status wp_cache_write(const char* path, const wp_vector* v);
WP_API wp_status wp_cache_read(const char* path, const wp_limits* limits, wp_vector** out);
/* Writes the cache path for n into path_out. */
WP_API wp_status wp_cache_path(const char* cache_dir, uint32_t n, char* path_out, size_t capacity);
WP_API uint64_t wp_fnv1a64(const void* bytes, size_t size);

/* ---- verification ---------------------------------------------------------------- */

typedef enum wp_verify_level { WP_VERIFY_QUICK = 0, WP_VERIFY_FULL = 1 } wp_verify_level;

#define WP_VERIFY_INVERT_SIGN 0x1u

/* *json_out receives a heap string released with wp_string_free.
 * *failures receives the number of failed checks. */
WP_API wp_status wp_verify(wp_verify_level level, uint32_t flags, uint64_t seed, char** json_out,
                           uint32_t* failures);
WP_API void wp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* WALSHPRIME_H */
