#ifndef SPINTENSOR_H
#define SPINTENSOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TpStatus {
  TP_STATUS_OK = 0,
  TP_STATUS_INTERNAL = 1,
  TP_STATUS_INVALID = 2,
  TP_STATUS_NULL_POINTER = 3,
  TP_STATUS_UTF8 = 4,
  TP_STATUS_BUFFER_TOO_SMALL = 5,
  TP_STATUS_PANIC = 6,
} TpStatus;

// A completed decomposition `δ ↦ N(δ)`.
typedef struct TpDecomposition TpDecomposition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Runs a job document and returns the result document as a newly allocated
// string (free it with [`tp_string_free`]). `exit_code` receives the same
// 0/1/2 code the command-line tool would exit with.
//
// # Safety
// `job_json` must be a NUL-terminated string; `out_json` and `exit_code`
// must be valid for writes.
enum TpStatus tp_run_job(const char *job_json, char **out_json, int32_t *exit_code);

// Decomposes the representations described by a job document. The
// `command` field is required but otherwise ignored.
//
// # Safety
// `job_json` must be a NUL-terminated string; `out` must be valid for writes.
enum TpStatus tp_decompose(const char *job_json, struct TpDecomposition **out);

// # Safety
// `dec` must come from [`tp_decompose`] and not have been freed already.
void tp_decomposition_free(struct TpDecomposition *dec);

// Number of distinct `δ`, and the rank of each `δ` (which is the rank of `M′`).
//
// # Safety
// `dec` must be a live handle; `count` and `rank` must be valid for writes.
enum TpStatus tp_decomposition_shape(const struct TpDecomposition *dec,
                                     size_t *count,
                                     size_t *rank);

// Writes block `index` (in ascending `δ` order) as doubled coordinates into
// `delta_doubled[0..len]` and its multiplicity into `multiplicity`.
//
// # Safety
// `dec` must be a live handle; `delta_doubled` must be valid for `len`
// writes; `multiplicity` must be valid for writes.
enum TpStatus tp_decomposition_block(const struct TpDecomposition *dec,
                                     size_t index,
                                     int64_t *delta_doubled,
                                     size_t len,
                                     uint64_t *multiplicity);

// Multiplicity of the principal-series family with `M`-label `φ`.
//
// # Safety
// `dec` must be a live handle; `phi_doubled` must be valid for `len` reads.
enum TpStatus tp_multiplicity_principal(const struct TpDecomposition *dec,
                                        const int64_t *phi_doubled,
                                        size_t len,
                                        uint64_t *out);

// Multiplicity of the discrete series with parameter `a` and sign
// `sign` (`+1` or `-1`).
//
// # Safety
// `dec` must be a live handle; `a_doubled` must be valid for `len` reads.
enum TpStatus tp_multiplicity_discrete(const struct TpDecomposition *dec,
                                       const int64_t *a_doubled,
                                       size_t len,
                                       int32_t sign,
                                       uint64_t *out);

// # Safety
// `s` must come from [`tp_run_job`] and not have been freed already.
void tp_string_free(char *s);

// Copies the calling thread's last error message into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length without the NUL, or 0
// if there is none.
//
// # Safety
// `buf` must be valid for `len` writes, or null with `len == 0`.
size_t tp_last_error_message(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINTENSOR_H */
