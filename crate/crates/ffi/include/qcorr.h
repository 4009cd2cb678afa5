#ifndef QCORR_H
#define QCORR_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. 2, 3 and 4 match the command-line exit codes.
 */
typedef enum QcorrStatus {
  QCORR_STATUS_OK = 0,
  QCORR_STATUS_NULL_POINTER = 1,
  QCORR_STATUS_MALFORMED = 2,
  QCORR_STATUS_NOT_UNITARY = 3,
  QCORR_STATUS_SIZE_LIMIT = 4,
  QCORR_STATUS_NO_COUNTERPART = 5,
  QCORR_STATUS_BUFFER_TOO_SMALL = 6,
  QCORR_STATUS_PANIC = 7,
} QcorrStatus;

typedef enum QcorrCoset {
  QCORR_COSET_I = 0,
  QCORR_COSET_SWAP = 1,
  QCORR_COSET_CNOT12 = 2,
  QCORR_COSET_CNOT21 = 3,
  QCORR_COSET_SWAT12 = 4,
  QCORR_COSET_SWAT21 = 5,
} QcorrCoset;

typedef enum QcorrProblem {
  QCORR_PROBLEM_PARITY = 0,
  QCORR_PROBLEM_BV = 1,
} QcorrProblem;

/**
 * Opaque Bernstein-Vazirani instance.
 */
typedef struct QcorrBv QcorrBv;

/**
 * Opaque Boolean function.
 */
typedef struct QcorrFunction QcorrFunction;

/**
 * Opaque square complex matrix.
 */
typedef struct QcorrMatrix QcorrMatrix;

typedef struct QcorrMakhlin {
  double alpha;
  double beta;
  double gamma;
  /**
   * Imaginary part dropped from `gamma`.
   */
  double gamma_imag;
} QcorrMakhlin;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *qcorr_last_error(void);

/**
 * Builds a `dim`×`dim` matrix from `2·dim²` interleaved `re, im` values in
 * row-major order.
 *
 * # Safety
 * `entries` must point to `len` readable doubles; `out` must be writable.
 */
enum QcorrStatus qcorr_matrix_new(size_t dim,
                                  const double *entries,
                                  size_t len,
                                  struct QcorrMatrix **out_matrix);

/**
 * Parses the matrix JSON schema `{"dim": d, "entries": [[re, im], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out_matrix` must be writable.
 */
enum QcorrStatus qcorr_matrix_from_json(const char *json, struct QcorrMatrix **out_matrix);

/**
 * # Safety
 * `matrix` must be NULL or a handle from `qcorr_matrix_new`/`_from_json`
 * that has not been freed.
 */
void qcorr_matrix_free(struct QcorrMatrix *matrix);

/**
 * # Safety
 * `matrix` must be a live handle.
 */
size_t qcorr_matrix_dim(const struct QcorrMatrix *matrix);

/**
 * # Safety
 * `matrix` must be a live handle; `out_invariants` must be writable.
 */
enum QcorrStatus qcorr_makhlin_invariants(const struct QcorrMatrix *matrix,
                                          double tol,
                                          struct QcorrMakhlin *out_invariants);

/**
 * Writes the counterpart class as a bit set: bit `c` is set when coset
 * `c` (a `QcorrCoset` value) belongs to the class. 0 is the empty class.
 *
 * # Safety
 * `matrix` must be a live handle; `out_mask` must be writable.
 */
enum QcorrStatus qcorr_classify(const struct QcorrMatrix *matrix, double tol, uint32_t *out_mask);

/**
 * Coset of a permutation of `{0,1,2,3}` given as four images.
 *
 * # Safety
 * `perm` must point to four readable values; `out_coset` must be writable.
 */
enum QcorrStatus qcorr_coset_of(const uint32_t *perm, enum QcorrCoset *out_coset);

/**
 * Truth table of length `2^n`, entries 0 or 1, index MSB = `x₁`.
 *
 * # Safety
 * `truth` must point to `len` readable bytes; `out_function` must be writable.
 */
enum QcorrStatus qcorr_function_new(size_t n,
                                    const uint8_t *truth,
                                    size_t len,
                                    struct QcorrFunction **out_function);

/**
 * # Safety
 * `function` must be NULL or a live handle.
 */
void qcorr_function_free(struct QcorrFunction *function);

/**
 * Promise instance `f(x) = k0 ⊕ k·x`; `k` holds `n` bytes, `k₁` first.
 *
 * # Safety
 * `k` must point to `n` readable bytes; `out_instance` must be writable.
 */
enum QcorrStatus qcorr_bv_new(size_t n,
                              uint8_t k0,
                              const uint8_t *k,
                              struct QcorrBv **out_instance);

/**
 * # Safety
 * `instance` must be NULL or a live handle.
 */
void qcorr_bv_free(struct QcorrBv *instance);

/**
 * Counterpart of the standard oracle of `function` under a `C`/`H` word of
 * length `n + 1`. Writes `2^(n+1)` images into `out_perm`.
 *
 * # Safety
 * `function` must be a live handle, `bases` NUL-terminated, and `out_perm`
 * writable for `out_len` values.
 */
enum QcorrStatus qcorr_standard_counterpart(const struct QcorrFunction *function,
                                            const char *bases,
                                            double tol,
                                            uint32_t *out_perm,
                                            size_t out_len);

/**
 * Counterpart of the phase oracle of `instance` under a word of length `n`.
 *
 * # Safety
 * As for `qcorr_standard_counterpart`.
 */
enum QcorrStatus qcorr_phase_counterpart(const struct QcorrBv *instance,
                                         const char *bases,
                                         double tol,
                                         uint32_t *out_perm,
                                         size_t out_len);

/**
 * Truth table of the promise function of `instance` as a new handle.
 *
 * # Safety
 * `instance` must be a live handle; `out_function` must be writable.
 */
enum QcorrStatus qcorr_bv_function(const struct QcorrBv *instance,
                                   struct QcorrFunction **out_function);

/**
 * Exact deterministic query complexity. `oracle` is `OS`, `OA`, `OB`,
 * `OBT` or `extracted:WORD`. Writes -1 when the family cannot solve the
 * problem.
 *
 * # Safety
 * `oracle` must be NUL-terminated; `out_queries` must be writable.
 */
enum QcorrStatus qcorr_query_complexity(enum QcorrProblem problem,
                                        size_t n,
                                        const char *oracle,
                                        double tol,
                                        int64_t *out_queries);

/**
 * Simulates Bernstein-Vazirani; writes the recovered `k` (`n` bytes).
 *
 * # Safety
 * `instance` must be a live handle; `out_k` writable for `k_len` bytes;
 * `out_queries` writable.
 */
enum QcorrStatus qcorr_run_bv(const struct QcorrBv *instance,
                              uint8_t *out_k,
                              size_t k_len,
                              uint32_t *out_queries);

/**
 * Simulates the PARITY algorithm.
 *
 * # Safety
 * `function` must be a live handle; outputs must be writable.
 */
enum QcorrStatus qcorr_run_parity(const struct QcorrFunction *function,
                                  uint8_t *out_parity,
                                  uint32_t *out_queries);

/**
 * Speed-up report as a JSON string over the `{C, H}` grid. Free the
 * result with `qcorr_string_free`.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum QcorrStatus qcorr_speedup_report_json(enum QcorrProblem problem,
                                           size_t n,
                                           double tol,
                                           char **out_json);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void qcorr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCORR_H */
