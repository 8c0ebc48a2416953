#ifndef QBOREL_H
#define QBOREL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QbKappaVerdict {
  QB_KAPPA_VERDICT_DISTINCT = 0,
  QB_KAPPA_VERDICT_COMPATIBLE = 1,
  QB_KAPPA_VERDICT_EQUAL = 2,
} QbKappaVerdict;

// Result codes.
typedef enum QbStatus {
  QB_STATUS_OK = 0,
  QB_STATUS_NULL_POINTER = 1,
  QB_STATUS_INVALID_UTF8 = 2,
  QB_STATUS_CONFIG = 3,
  QB_STATUS_PARSE = 4,
  QB_STATUS_DOMAIN = 5,
  // a verification or theorem check failed
  QB_STATUS_VERIFICATION = 6,
  QB_STATUS_ENGINE = 7,
  QB_STATUS_PANIC = 8,
} QbStatus;

// Opaque algebra handle.
typedef struct QbAlgebra QbAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// ABI version: major·10000 + minor·100 + patch.
uint32_t qb_version(void);

// Message of the last failed call on this thread, or NULL. Valid until the
// next call on the same thread.
const char *qb_last_error_message(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void qb_string_free(char *s);

// Build u_q for a root-system label such as "A2" and an odd order l.
//
// # Safety
// `label` must be a NUL-terminated string; `out` must be writable.
enum QbStatus qb_algebra_new(const char *label, uint32_t l, struct QbAlgebra **out);

// # Safety
// `a` must be NULL or a handle from `qb_algebra_new`, not used afterwards.
void qb_algebra_free(struct QbAlgebra *a);

// Rank of the root system and number of positive roots.
//
// # Safety
// `a` must be a live handle; out-pointers must be writable.
enum QbStatus qb_algebra_shape(const struct QbAlgebra *a, size_t *rank, size_t *positive_roots);

// dim H¹ and dim H² of u_q twisted by the alternating form (row-major,
// rank² entries, or NULL for the trivial form) in Q-degree `degree`.
//
// # Safety
// `a` must be a live handle; arrays must hold the stated lengths.
enum QbStatus qb_cohomology_dims(const struct QbAlgebra *a,
                                 const int64_t *form,
                                 size_t form_len,
                                 const int64_t *degree,
                                 size_t degree_len,
                                 size_t *h1,
                                 size_t *h2);

// Sets `*ok` to 1 if the twist file (JSON) satisfies the twist equation.
//
// # Safety
// `a` must be a live handle; `json` NUL-terminated; `ok` writable.
enum QbStatus qb_twist_verify_json(const struct QbAlgebra *a, const char *json, int32_t *ok);

// Reduce a twist file (JSON) to its normal form; writes the normal-form JSON.
//
// # Safety
// `a` must be a live handle; `json` NUL-terminated; `out` writable.
enum QbStatus qb_twist_reduce_json(struct QbAlgebra *a, const char *json, char **out);

// Replay a normal form (JSON from `qb_twist_reduce_json`); writes the twist file JSON.
//
// # Safety
// `a` must be a live handle; `json` NUL-terminated; `out` writable.
enum QbStatus qb_twist_replay_json(struct QbAlgebra *a, const char *json, char **out);

// Compare two alternating forms through the Killing map. Matrix-level
// only: no algebra is built.
//
// # Safety
// `label` NUL-terminated; `m1`, `m2` hold `len` = rank² entries; `verdict` writable.
enum QbStatus qb_kappa_invariant(const char *label,
                                 uint32_t l,
                                 const int64_t *m1,
                                 const int64_t *m2,
                                 size_t len,
                                 enum QbKappaVerdict *verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QBOREL_H */
