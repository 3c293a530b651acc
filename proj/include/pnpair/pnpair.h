#ifndef PNPAIR_PNPAIR_H
#define PNPAIR_PNPAIR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PNPAIR_BUILDING_LIBRARY)
#define PNPAIR_API __declspec(dllexport)
#else
#define PNPAIR_API __declspec(dllimport)
#endif
#else
#define PNPAIR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pnpair_status {
  PNPAIR_OK = 0,
  PNPAIR_ERR_INVALID_ARGUMENT = 1,
  PNPAIR_ERR_NON_IRREDUCIBLE_MODULUS = 2,
  PNPAIR_ERR_FACTORIZATION_FAILURE = 3,
  PNPAIR_ERR_FIELD_TOO_LARGE = 4,
  PNPAIR_ERR_ZERO_TO_ZERO = 5,
  PNPAIR_ERR_ZERO_ELEMENT = 6,
  PNPAIR_ERR_IO = 7,
  PNPAIR_ERR_UNSUPPORTED = 8,
  PNPAIR_ERR_INTERNAL = 99
} pnpair_status;

PNPAIR_API const char* pnpair_version(void);
PNPAIR_API const char* pnpair_status_string(pnpair_status status);
/* Message of the most recent failure on the calling thread; never NULL. */
PNPAIR_API const char* pnpair_last_error(void);
/* Releases strings returned through char** out-parameters. */
PNPAIR_API void pnpair_free_string(char* s);

/* Process-wide settings. */
/* Persistent factorization cache file; NULL or "" disables it. */
PNPAIR_API pnpair_status pnpair_set_factor_cache(const char* path);
PNPAIR_API void pnpair_set_rho_budget(uint64_t iterations);
/* Worker threads for parallel operations; 0 selects hardware concurrency. */
PNPAIR_API void pnpair_set_threads(unsigned threads);
/* Adds a "timestamp" member to JSON results when nonzero (default 1). */
PNPAIR_API void pnpair_set_timestamps(int enabled);

/* Elements of F_{q^m}, q = 2^k, are uint64_t with bit i the coefficient of x^i
   in F_2[x]/(p), deg p = k*m <= 64. */
typedef struct pnpair_field pnpair_field;

/* modulus: an F_2 polynomial such as "x^8+x^4+x^3+x+1", or NULL for the
   smallest irreducible of degree k*m. */
PNPAIR_API pnpair_status pnpair_field_create(unsigned k, unsigned m, const char* modulus, pnpair_field** out);
PNPAIR_API void pnpair_field_destroy(pnpair_field* field);
PNPAIR_API pnpair_status pnpair_field_info_json(const pnpair_field* field, char** out_json);
PNPAIR_API unsigned pnpair_field_degree(const pnpair_field* field);

/* Accepts "0x..." hex or a polynomial in a, alpha or x reduced mod p. */
PNPAIR_API pnpair_status pnpair_elem_parse(const pnpair_field* field, const char* text, uint64_t* out);
PNPAIR_API pnpair_status pnpair_elem_add(const pnpair_field* field, uint64_t a, uint64_t b, uint64_t* out);
PNPAIR_API pnpair_status pnpair_elem_mul(const pnpair_field* field, uint64_t a, uint64_t b, uint64_t* out);
/* exponent is a non-negative decimal integer of any size. */
PNPAIR_API pnpair_status pnpair_elem_pow(const pnpair_field* field, uint64_t a, const char* exponent, uint64_t* out);
PNPAIR_API pnpair_status pnpair_elem_inv(const pnpair_field* field, uint64_t a, uint64_t* out);
PNPAIR_API pnpair_status pnpair_elem_frobenius(const pnpair_field* field, uint64_t a, uint64_t* out);
PNPAIR_API pnpair_status pnpair_elem_order(const pnpair_field* field, uint64_t a, uint64_t* out);
PNPAIR_API pnpair_status pnpair_elem_is_primitive(const pnpair_field* field, uint64_t a, int* out);
PNPAIR_API pnpair_status pnpair_elem_is_normal(const pnpair_field* field, uint64_t a, int* out);
PNPAIR_API pnpair_status pnpair_find_primitive(const pnpair_field* field, uint64_t* out);

/* A rational map (a x^2 + b x + c) / (d x + e) given as {a, b, c, d, e}. */
PNPAIR_API pnpair_status pnpair_map_eval(const pnpair_field* field, const uint64_t q5[5], uint64_t u, uint64_t* out,
                                         int* is_pole);

/* JSON operations. Every char** result is released with pnpair_free_string. */
PNPAIR_API pnpair_status pnpair_factor_json(const char* n_decimal, char** out_json);
PNPAIR_API pnpair_status pnpair_factor_qm1_json(unsigned k, unsigned m, char** out_json);
PNPAIR_API pnpair_status pnpair_xm1_json(unsigned k, unsigned m, int list_factors, char** out_json);
/* Plain condition with e = q^m - 1, g = x^m - 1; constant NULL means 4. */
PNPAIR_API pnpair_status pnpair_bound_json(unsigned k, unsigned m, const char* constant, char** out_json);
/* d: "q^m-1" or a decimal divisor. g: "1", "x^m-1", "deg:d1,..." or an F_2
   polynomial. Both NULL selects the automatic search. */
PNPAIR_API pnpair_status pnpair_sieve_json(unsigned k, unsigned m, const char* d, const char* g, char** out_json);
/* a NULL lists every divisor a of q - 1. */
PNPAIR_API pnpair_status pnpair_lemma53_json(unsigned k, const char* a, char** out_json);
PNPAIR_API pnpair_status pnpair_lemma56_json(unsigned k, unsigned m, char** out_json);
/* e1, e2: decimal divisors of q^m - 1 ("q^m-1" allowed). g1, g2 as for the sieve. */
PNPAIR_API pnpair_status pnpair_count_m_json(const pnpair_field* field, const uint64_t q5[5], const char* e1,
                                             const char* g1, const char* e2, const char* g2, char** out_json);

typedef struct pnpair_search_options {
  int exhaustive;                 /* 1: enumerate all quintuples, 0: sample */
  uint64_t budget;                /* sampled draws */
  uint64_t seed;
  unsigned shard_index;           /* 1-based */
  unsigned shard_total;
  unsigned threads;               /* 0: process-wide setting */
  int emit_exceptional;
  uint64_t exhaustive_cap;        /* largest q^m searched exhaustively */
  int has_alpha;
  uint64_t alpha;                 /* primitive base element */
  const char* checkpoint_path;    /* NULL: none */
  double checkpoint_interval_s;
  uint64_t stop_after;            /* 0: run to the end */
} pnpair_search_options;

PNPAIR_API void pnpair_search_options_init(pnpair_search_options* opts);
/* exceptional_count may be NULL. */
PNPAIR_API pnpair_status pnpair_search_json(const pnpair_field* field, const pnpair_search_options* opts,
                                            char** out_json, uint64_t* exceptional_count);
PNPAIR_API pnpair_status pnpair_resume_json(const pnpair_field* field, const char* checkpoint_path,
                                            const pnpair_search_options* opts, char** out_json,
                                            uint64_t* exceptional_count);
/* reports: JSON search reports of the same field. */
PNPAIR_API pnpair_status pnpair_merge_reports_json(const char* const* reports, size_t count, char** out_json,
                                                   uint64_t* exceptional_count);
/* confirmed is set to 1 when no witness exists for the map. */
PNPAIR_API pnpair_status pnpair_verify_counterexample_json(const pnpair_field* field, const uint64_t q5[5],
                                                           int has_alpha, uint64_t alpha, char** out_json,
                                                           int* confirmed);

/* data_dir NULL uses $PNPAIR_DATA or the installed default. table 0 runs
   everything, 1 or 2 a single table. csv selects CSV for a single table. */
PNPAIR_API pnpair_status pnpair_reproduce_tables(const char* data_dir, int table, int csv, char** out);
PNPAIR_API pnpair_status pnpair_check_wbound_json(uint64_t n_max, unsigned root, const char* constant, int odd_only,
                                                  char** out_json);

#ifdef __cplusplus
}
#endif

#endif
