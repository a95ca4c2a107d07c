#ifndef NORMORD_H
#define NORMORD_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define NORMORD_API __attribute__((visibility("default")))
#else
#define NORMORD_API
#endif

typedef enum normord_status {
    NORMORD_OK = 0,
    NORMORD_ERR_PARSE = 1,
    NORMORD_ERR_RANGE = 2,
    NORMORD_ERR_DOMAIN = 3,
    NORMORD_ERR_INVARIANT = 4,
    NORMORD_ERR_IO = 5,
    NORMORD_ERR_ARGUMENT = 6, /* null handle, bad config value */
    NORMORD_ERR_INTERNAL = 7
} normord_status;

typedef enum normord_format {
    NORMORD_FORMAT_JSON = 0,
    NORMORD_FORMAT_TABLE = 1,
    NORMORD_FORMAT_BFILE = 2
} normord_format;

/* Configuration, last error and last warning. Not thread-safe; use one per thread. */
typedef struct normord_ctx normord_ctx;
/* An immutable normal form sum c (a+)^k a^l. */
typedef struct normord_nf normord_nf;

NORMORD_API const char* normord_version(void);
NORMORD_API const char* normord_status_name(normord_status s);

NORMORD_API normord_status normord_ctx_new(normord_ctx** out);
NORMORD_API void normord_ctx_free(normord_ctx* ctx);
/* Message of the last failing call on ctx, "" if none. Owned by ctx. */
NORMORD_API const char* normord_last_error(const normord_ctx* ctx);
/* Non-fatal notice of the last call (e.g. a corrupt cache file), "" if none. */
NORMORD_API const char* normord_last_warning(const normord_ctx* ctx);

NORMORD_API normord_status normord_set_series_order(normord_ctx* ctx, size_t order);
NORMORD_API normord_status normord_set_lambda_order(normord_ctx* ctx, size_t order);
/* digits >= 30; the tolerance must stay >= 10^-(digits-10). */
NORMORD_API normord_status normord_set_precision(normord_ctx* ctx, unsigned digits);
/* Decimal string such as "1e-30". */
NORMORD_API normord_status normord_set_tolerance(normord_ctx* ctx, const char* tolerance);
NORMORD_API normord_status normord_set_cache_dir(normord_ctx* ctx, const char* dir);
NORMORD_API normord_status normord_set_threads(normord_ctx* ctx, unsigned threads);

/* Strings returned through char** are heap-allocated; release with normord_string_free. */
NORMORD_API void normord_string_free(char* s);

/* Parses an expression over a, ad, n, rationals, (), ^k and normal orders it. */
NORMORD_API normord_status normord_nf_parse(normord_ctx* ctx, const char* expr, normord_nf** out);
NORMORD_API normord_status normord_nf_from_json(normord_ctx* ctx, const char* json, normord_nf** out);
NORMORD_API void normord_nf_free(normord_nf* nf);

NORMORD_API normord_status normord_nf_power(normord_ctx* ctx, const normord_nf* nf, unsigned long n, normord_nf** out);
NORMORD_API normord_status normord_nf_multiply(normord_ctx* ctx, const normord_nf* a, const normord_nf* b,
                                               normord_nf** out);
NORMORD_API normord_status normord_nf_dagger(normord_ctx* ctx, const normord_nf* nf, normord_nf** out);
NORMORD_API normord_status normord_nf_equal(normord_ctx* ctx, const normord_nf* a, const normord_nf* b, int* out);

/* JSON or aligned table (NORMORD_FORMAT_BFILE is rejected). */
NORMORD_API normord_status normord_nf_render(normord_ctx* ctx, const normord_nf* nf, normord_format fmt, char** out);
/* <z|nf|z> for z = re + i im given as rationals ("3", "-1/2"); im may be NULL.
   Result "p/q" or "p/q + p/q i". */
NORMORD_API normord_status normord_nf_expectation(normord_ctx* ctx, const normord_nf* nf, const char* re,
                                                  const char* im, char** out);
/* Coefficient table of nf^n counted over graphs, as JSON with total_weight. */
NORMORD_API normord_status normord_nf_graph_table(normord_ctx* ctx, const normord_nf* nf, unsigned n, char** out);
/* Every graph with n <= 3 vertices, one per line. */
NORMORD_API normord_status normord_nf_graph_list(normord_ctx* ctx, const normord_nf* nf, unsigned n, char** out);

/* B_r^(M)(n) for n = 0..n_max (poly = 0) or the rows S_r^(M)(n,k) (poly != 0),
   through the triangle cache when a cache directory is configured. */
NORMORD_API normord_status normord_sequence(normord_ctx* ctx, unsigned r, unsigned M, unsigned n_max, int poly,
                                            normord_format fmt, char** out);
NORMORD_API normord_status normord_cache_clear(normord_ctx* ctx, size_t* removed);

typedef struct normord_verify_options {
    int has_r, has_M, has_n, has_p;
    unsigned r, M, n, p;
    const char* b;       /* rational or NULL */
    const char* x;       /* rational or NULL */
    const char* example; /* example id or NULL */
    const char* kind;    /* hypergeometric kind or NULL */
    int with_timing;
} normord_verify_options;

NORMORD_API void normord_verify_options_init(normord_verify_options* opt);
/* Runs one identity id or "all"; writes the JSON report array and the number
   of failed reports. An unknown id yields NORMORD_ERR_RANGE. */
NORMORD_API normord_status normord_verify(normord_ctx* ctx, const char* id, const normord_verify_options* opt,
                                          char** json, size_t* failures);
/* Newline-separated list of identity ids. */
NORMORD_API normord_status normord_identity_ids(normord_ctx* ctx, char** out);

#ifdef __cplusplus
}
#endif

#endif
