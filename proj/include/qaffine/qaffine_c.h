#ifndef QAFFINE_C_H
#define QAFFINE_C_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* C surface of the library: opaque handles, integer status codes, and
 * heap-allocated JSON strings. Every string returned through a char* or a
 * char** is owned by the caller and must be released with qaf_string_free.
 * Status codes double as the process exit codes of the bundled CLI. */

typedef struct qaf_algebra qaf_algebra;

typedef enum qaf_status {
  QAF_OK = 0,             /* success; for verifications: the check passed */
  QAF_CHECK_FAILED = 1,   /* a verification or validation found a violation */
  QAF_BAD_INPUT = 2,      /* unparseable or semantically impossible input */
  QAF_RESOURCE_LIMIT = 3, /* a weight space exceeded the basis limit */
} qaf_status;

uint32_t qaf_abi_version(void);

void qaf_string_free(char* s);

/* Message describing the most recent failure on the calling thread; empty
 * string after a success. Valid until the next qaffine call on the thread. */
const char* qaf_last_error(void);

/* JSON array of {"name", "rank", "partner"}; partner is null when the
 * correspondence has none. Returns NULL only on allocation failure. */
char* qaf_catalog_list(void);

qaf_status qaf_algebra_create_catalog(const char* name, qaf_algebra** out);
qaf_status qaf_algebra_create_json(const char* spec_json, qaf_algebra** out);
qaf_status qaf_algebra_partner(const qaf_algebra* a, qaf_algebra** out);
char* qaf_algebra_export_json(const qaf_algebra* a);
void qaf_algebra_destroy(qaf_algebra* a);

/* Validate a spec without keeping it: QAF_OK when it defines an algebra,
 * QAF_CHECK_FAILED when well-formed JSON violates an invariant,
 * QAF_BAD_INPUT when the text does not parse. qaf_last_error explains. */
qaf_status qaf_validate_json(const char* spec_json);

typedef struct qaf_job_options {
  const char* cache_dir; /* NULL or empty: no disk cache */
  const char* lambda0;   /* NULL: skip the claim check */
  uint64_t seed;
  int use_seed;             /* 0: library default seed */
  int allow_nonintegrable;  /* nonzero: permit non-integrable labels */
} qaf_job_options;

/* labels_csv: comma-separated rationals, one per node. depth < 0 selects
 * the default (5). On QAF_RESOURCE_LIMIT *json_out still holds the partial
 * table, flagged "partial": true. */
qaf_status qaf_character(const qaf_algebra* a, const char* labels_csv, long depth,
                         const qaf_job_options* opt, char** json_out);
qaf_status qaf_character_csv(const qaf_algebra* a, const char* labels_csv, long depth,
                             const qaf_job_options* opt, char** csv_out);

/* kind: "serre" | "presentation" | "specialized" | "classical" | "tensor" |
 * "twist". labels2_csv is the right tensor factor (tensor only, else NULL);
 * mutate_sign corrupts the twist's sign vectors for negative controls.
 * depth < 0 selects the default (4; tensor 2). *json_out receives the report
 * whenever one was produced, including failing ones. */
qaf_status qaf_verify(const qaf_algebra* a, const char* kind, const char* labels_csv,
                      const char* labels2_csv, long depth, int mutate_sign,
                      const qaf_job_options* opt, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* QAFFINE_C_H */
