#ifndef MAXITIVE_MAXITIVE_H
#define MAXITIVE_MAXITIVE_H

/* C interface to the maxitive library. Every fallible call returns an
 * mx_status; on failure mx_last_error() describes the problem for the
 * calling thread. Handles are opaque and owned by the caller; strings and
 * arrays returned through out-parameters are released with mx_string_free
 * and mx_doubles_free. Sizes are element counts. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MX_BUILDING_LIBRARY)
#define MX_API __declspec(dllexport)
#else
#define MX_API __declspec(dllimport)
#endif
#else
#define MX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mx_status {
  MX_OK = 0,
  MX_INVALID_ARGUMENT = 1,
  MX_SIZE_MISMATCH = 2,
  MX_NOT_UPSET = 3,
  MX_NOT_INCREASING = 4,
  MX_CAP_EXCEEDED = 5,
  MX_PARSE_ERROR = 6,
  MX_DOMAIN_ERROR = 7,
  MX_MISSING_CAPABILITY = 8,
  MX_PROPERTY_VIOLATION = 9,
  MX_IO_ERROR = 10,
  MX_INTERNAL = 11
} mx_status;

typedef enum mx_format { MX_FORMAT_JSON = 0, MX_FORMAT_CSV = 1 } mx_format;

typedef struct mx_poset mx_poset;
typedef struct mx_concentration mx_concentration;
typedef struct mx_model mx_model;

MX_API const char* mx_version(void);
MX_API const char* mx_status_name(mx_status status);
/* Message of the last failed call on this thread; empty after success. */
MX_API const char* mx_last_error(void);
MX_API void mx_string_free(char* s);
MX_API void mx_doubles_free(double* v);
MX_API void mx_counts_free(size_t* v);

/* "lo:hi:step" grids. */
MX_API mx_status mx_parse_real_range(const char* text, double** out, size_t* count);
MX_API mx_status mx_parse_count_range(const char* text, size_t** out, size_t* count);

/* Finite preorders: text format is a first line `n` followed by `x <= y` lines. */
MX_API mx_status mx_poset_parse(const char* text, mx_poset** out);
MX_API mx_status mx_poset_from_edges(size_t size, const size_t* lo, const size_t* hi,
                                     size_t edges, mx_poset** out);
MX_API void mx_poset_free(mx_poset* p);
MX_API size_t mx_poset_size(const mx_poset* p);
MX_API int mx_poset_leq(const mx_poset* p, size_t x, size_t y);
MX_API mx_status mx_poset_upset_count(const mx_poset* p, size_t* out);

/* Concentrations on the up-sets of a finite preorder. */
MX_API mx_status mx_concentration_from_json(const char* json, mx_concentration** out);
/* J_A = -min_A I; rate needs one value per element and must attain 0. */
MX_API mx_status mx_concentration_from_rate(const mx_poset* p, const double* rate, size_t size,
                                            mx_concentration** out);
MX_API mx_status mx_concentration_to_json(const mx_concentration* j, char** out);
MX_API void mx_concentration_free(mx_concentration* j);
MX_API size_t mx_concentration_upset_count(const mx_concentration* j);
/* Membership string such as "0110". */
MX_API mx_status mx_concentration_value(const mx_concentration* j, const char* upset, double* out);
MX_API mx_status mx_maxitive_integral(const mx_concentration* j, const double* f, size_t size,
                                      double* out);
MX_API mx_status mx_is_weakly_maxitive(const mx_concentration* j, int* out);
MX_API mx_status mx_minimal_rate(const mx_concentration* j, double* out, size_t size);

/* Sample models: "bernoulli:p", "gaussian:m,s2", "exponential:lambda",
 * "finite:x1@p1,x2@p2,...". */
MX_API mx_status mx_model_parse(const char* spec, mx_model** out);
MX_API void mx_model_free(mx_model* m);
MX_API mx_status mx_model_mean(const mx_model* m, double* out);
MX_API mx_status mx_log_mgf(const mx_model* m, double mu, double* out);
MX_API mx_status mx_monotone_cramer_rate(const mx_model* m, double x, double* out);
MX_API mx_status mx_exact_tail_log(const mx_model* m, double a, size_t n, int open, double* out);

/* I*(mu) = max over knots of mu x - I(x), mu >= 0; out has mu_count slots. */
MX_API mx_status mx_fenchel_conjugate(const double* x, const double* rate, size_t size,
                                      const double* mu, size_t mu_count, size_t threads,
                                      double* out);

/* Experiment runners. Fill a config with its _init function, then override
 * fields. Output text goes to *output (free with mx_string_free). */
typedef struct mx_common_config {
  uint64_t seed;
  size_t threads;
  int has_tol;
  double tol;
  mx_format format;
} mx_common_config;

typedef struct mx_finite_config {
  mx_common_config common;
  size_t instances;
  size_t max_size;
  size_t functions;
  size_t cover_search_max;
  size_t staircase_max;
  const char* poset_text; /* NULL: random posets */
  int plant_v_example;
} mx_finite_config;

typedef struct mx_cramer_config {
  mx_common_config common;
  const char* model;
  const double* a_grid;
  size_t a_count;
  size_t n_max;
  const size_t* ns; /* NULL: n_max / 16, ..., n_max */
  size_t n_count;
  uint64_t trials;
} mx_cramer_config;

typedef struct mx_asym_config {
  mx_common_config common;
  const char* const* models;
  size_t model_count;
  const char* set;
  const size_t* schedule;
  size_t schedule_count;
  uint64_t trials;
} mx_asym_config;

typedef struct mx_conjugate_config {
  mx_common_config common;
  const char* input_csv;
  double mu_max;
  size_t mu_points;
} mx_conjugate_config;

typedef struct mx_check_config {
  mx_common_config common;
  const char* concentration_json;
  size_t samples;
} mx_check_config;

MX_API void mx_finite_config_init(mx_finite_config* c);
MX_API void mx_cramer_config_init(mx_cramer_config* c);
MX_API void mx_asym_config_init(mx_asym_config* c);
MX_API void mx_conjugate_config_init(mx_conjugate_config* c);
MX_API void mx_check_config_init(mx_check_config* c);

MX_API mx_status mx_run_finite(const mx_finite_config* c, char** output, size_t* violations);
MX_API mx_status mx_run_cramer(const mx_cramer_config* c, char** output, size_t* violations);
MX_API mx_status mx_run_asym(const mx_asym_config* c, char** output, size_t* violations);
MX_API mx_status mx_run_conjugate(const mx_conjugate_config* c, char** output, size_t* violations);
MX_API mx_status mx_run_check(const mx_check_config* c, char** output, size_t* violations);

#ifdef __cplusplus
}
#endif

#endif
