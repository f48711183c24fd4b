/* C interface to the set-similarity-join engine. All engine state lives
 * behind opaque handles; every entry point returns a status code and leaves
 * a human-readable message in ssj_last_error() on failure. */

#ifndef SSJOIN_H
#define SSJOIN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int ssj_status;

#define SSJ_OK 0
#define SSJ_ERROR_INVALID_ARGUMENT 1
#define SSJ_ERROR_IO 2
#define SSJ_ERROR_PARSE 3
#define SSJ_ERROR_INTERNAL 4

/* Message describing the most recent failure on this thread. */
const char* ssj_last_error(void);

typedef struct ssj_collection ssj_collection;
typedef struct ssj_report ssj_report;

/* ---- collections ---- */

#define SSJ_INPUT_TOKEN_IDS 0 /* one record of integer token ids per line */
#define SSJ_INPUT_WORDS 1     /* tokenize each line on whitespace */
#define SSJ_INPUT_QGRAMS 2    /* overlapping character q-grams per line */

ssj_status ssj_collection_load(const char* path, int input_format, int qgram_size,
                               ssj_collection** out);
/* Canonical id form: ascending ids, single spaces, one record per line. */
ssj_status ssj_collection_write(const ssj_collection* coll, const char* path);
void ssj_collection_free(ssj_collection* coll);

size_t ssj_collection_size(const ssj_collection* coll);
int64_t ssj_collection_median_size(const ssj_collection* coll);
double ssj_collection_mean_size(const ssj_collection* coll);
int64_t ssj_collection_max_size(const ssj_collection* coll);
int64_t ssj_collection_universe(const ssj_collection* coll);

#define SSJ_DIST_UNIFORM 0
#define SSJ_DIST_ZIPF 1

typedef struct ssj_generator_config {
    int distribution;     /* SSJ_DIST_* */
    int64_t num_sets;     /* > 0 */
    double mean_size;     /* Poisson mean, > 0; zero-size draws are redrawn */
    int64_t universe;     /* distinct token count, > 0 */
    uint64_t seed;
    double zipf_exponent; /* <= 0 selects the default 1.0 */
} ssj_generator_config;

ssj_status ssj_collection_generate(const ssj_generator_config* config, ssj_collection** out);

/* ---- joins ---- */

#define SSJ_ALGO_NAIVE 0
#define SSJ_ALGO_ALLPAIRS 1
#define SSJ_ALGO_PPJOIN 2
#define SSJ_ALGO_PPJOIN_PLUS 3
#define SSJ_ALGO_GROUPJOIN 4
#define SSJ_ALGO_ADAPTJOIN 5
#define SSJ_ALGO_PAR_BITMAP 6

#define SSJ_SIM_OVERLAP 0
#define SSJ_SIM_JACCARD 1
#define SSJ_SIM_COSINE 2
#define SSJ_SIM_DICE 3

#define SSJ_BITMAP_SET 0
#define SSJ_BITMAP_XOR 1
#define SSJ_BITMAP_NEXT 2
#define SSJ_BITMAP_COMBINED 3

#define SSJ_HASH_MOD 0
#define SSJ_HASH_MULT 1

#define SSJ_CUTOFF_AUTO 0
#define SSJ_CUTOFF_OFF 1
#define SSJ_CUTOFF_EXPLICIT 2

#define SSJ_PLACEMENT_DEFAULT 0
#define SSJ_PLACEMENT_FILTER2 1
#define SSJ_PLACEMENT_FILTER3 2

typedef struct ssj_join_options {
    int algorithm;          /* SSJ_ALGO_* */
    int similarity;         /* SSJ_SIM_* */
    int64_t threshold_num;  /* exact threshold as a fraction */
    int64_t threshold_den;

    int bitmap_enabled;     /* 0/1 */
    int bitmap_method;      /* SSJ_BITMAP_* */
    int bitmap_bits;        /* 0 = automatic (64, or 128 for median size > 64) */
    int bitmap_hash;        /* SSJ_HASH_* */
    int cutoff_mode;        /* SSJ_CUTOFF_* */
    int64_t cutoff_value;   /* used with SSJ_CUTOFF_EXPLICIT */
    int placement;          /* SSJ_PLACEMENT_* */

    int suffix_depth;       /* partition rounds for the suffix predicate */
    int ell_max;            /* adaptive prefix extension cap */
    int workers;            /* data-parallel join worker count */
    int buffer_capacity;    /* data-parallel per-record candidate buffer */
} ssj_join_options;

/* Fills the defaults (jaccard 1/2 allpairs, bitmap off, 2048 buffer, ...). */
void ssj_join_options_init(ssj_join_options* opts);

/* Self-join when s_or_null is NULL; an RS-join is only supported by the
 * naive algorithm. */
ssj_status ssj_join(const ssj_collection* r, const ssj_collection* s_or_null,
                    const ssj_join_options* opts, ssj_report** out);

/* Reports the bitmap setup a join with these options would run: resolved
 * method, width and cutoff. */
ssj_status ssj_resolve_bitmap(const ssj_collection* coll, const ssj_join_options* opts,
                              int* method, int* bits, int64_t* cutoff);

typedef struct ssj_pair {
    uint32_t id_r;
    uint32_t id_s;
    int64_t overlap;
} ssj_pair;

typedef struct ssj_counters {
    uint64_t candidates;
    uint64_t pruned_length;
    uint64_t pruned_positional;
    uint64_t pruned_suffix;
    uint64_t pruned_bitmap;
    uint64_t bitmap_tested;
    uint64_t filter_evaluations;
    uint64_t verified;
    uint64_t matched;
} ssj_counters;

typedef struct ssj_timings {
    double index_s;
    double candidates_s;
    double verify_s;
    double total_s;
} ssj_timings;

size_t ssj_report_pair_count(const ssj_report* report);
/* Pairs sorted ascending by (id_r, id_s); valid until ssj_report_free. */
const ssj_pair* ssj_report_pairs(const ssj_report* report);
void ssj_report_counters(const ssj_report* report, ssj_counters* out);
void ssj_report_timings(const ssj_report* report, ssj_timings* out);
uint64_t ssj_report_saturated_records(const ssj_report* report);
void ssj_report_free(ssj_report* report);

/* ---- sketch analytics ---- */

#define SSJ_SPACE_NORMALIZED 0
#define SSJ_SPACE_JACCARD 1

/* Expected overlap upper bound for disjoint n-token sets at width bits. */
ssj_status ssj_expected_bound(int method, int bits, int64_t n, double* out);
ssj_status ssj_monte_carlo_bound(int method, int bits, int64_t n, int64_t trials, uint64_t seed,
                                 double* out);
/* Largest set size at which the filter stays discriminative; *out is
 * INT64_MAX when no size degrades it. */
ssj_status ssj_cutoff(int method, int bits, int64_t threshold_num, int64_t threshold_den,
                      int space, int64_t* out);

/* Parses "p/q", "0.75" or "3" into an exact fraction. */
ssj_status ssj_parse_threshold(const char* text, int64_t* num, int64_t* den);

#ifdef __cplusplus
}
#endif

#endif /* SSJOIN_H */
