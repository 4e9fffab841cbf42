#ifndef LOCCLAB_H
#define LOCCLAB_H

#pragma once

/* Generated by cbindgen from locclab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum LoccStatus {
  /**
   * Success.
   */
  LOCC_STATUS_OK = 0,
  /**
   * A pointer argument was NULL or otherwise unusable.
   */
  LOCC_STATUS_NULL_ARGUMENT = 1,
  /**
   * Invalid input (malformed JSON, bad parameters, non-orthogonal set).
   */
  LOCC_STATUS_INVALID_INPUT = 2,
  /**
   * Internal failure; consult `locclab_last_error_message`.
   */
  LOCC_STATUS_INTERNAL = 5,
} LoccStatus;

/**
 * Which side moves first.
 */
typedef enum LoccSide {
  LOCC_SIDE_ALICE_FIRST = 0,
  LOCC_SIDE_BOB_FIRST = 1,
  LOCC_SIDE_EITHER_FIRST = 2,
} LoccSide;

/**
 * Verdict of the decision pipeline (mirrors the CLI exit codes).
 */
typedef enum LoccVerdictStatus {
  LOCC_VERDICT_STATUS_DISTINGUISHABLE = 0,
  LOCC_VERDICT_STATUS_INDISTINGUISHABLE = 3,
  LOCC_VERDICT_STATUS_UNDETERMINED = 4,
} LoccVerdictStatus;

/**
 * Opaque state-set handle.
 */
typedef struct LoccStateSet LoccStateSet;

/**
 * Opaque verdict handle.
 */
typedef struct LoccVerdict LoccVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL after a
 * success. The pointer stays valid until the next library call on the same
 * thread; do not free it.
 */
const char *locclab_last_error_message(void);

/**
 * Library version as a static NUL-terminated string; do not free it.
 */
const char *locclab_version(void);

/**
 * Parse a state set from its JSON form.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum LoccStatus locclab_state_set_from_json(const char *json, struct LoccStateSet **out);

/**
 * Build the tiling family for sizes `1 <= la <= lb`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LoccStatus locclab_state_set_tiling(uintptr_t la, uintptr_t lb, struct LoccStateSet **out);

/**
 * Build a named set: one of `bell3`, `quad_3x2`, `groisman_2x2`,
 * `penta_3x3`, `hex_3x2`.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum LoccStatus locclab_state_set_named(const char *name, struct LoccStateSet **out);

/**
 * Number of states in the set; 0 for a NULL handle.
 *
 * # Safety
 * `set` must be NULL or a live handle from this library.
 */
uintptr_t locclab_state_set_len(const struct LoccStateSet *set);

/**
 * Local dimensions of the set; zeros for a NULL handle.
 *
 * # Safety
 * `set` must be NULL or a live handle; `d_a`/`d_b` may be NULL.
 */
void locclab_state_set_dims(const struct LoccStateSet *set, uintptr_t *d_a, uintptr_t *d_b);

/**
 * Serialize a state set to its JSON form.
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer; release the
 * returned string with [`locclab_string_free`].
 */
enum LoccStatus locclab_state_set_to_json(const struct LoccStateSet *set, char **out);

/**
 * Run the one-way decision pipeline. `restarts = 0` and `tol <= 0` select
 * the defaults (32 restarts, 1e-9).
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum LoccStatus locclab_analyze(const struct LoccStateSet *set,
                                enum LoccSide side,
                                double tol,
                                uint64_t seed,
                                uintptr_t restarts,
                                struct LoccVerdict **out);

/**
 * Status of a verdict handle; `Undetermined` for NULL.
 *
 * # Safety
 * `verdict` must be NULL or a live handle.
 */
enum LoccVerdictStatus locclab_verdict_status(const struct LoccVerdict *verdict);

/**
 * Serialize the full verdict (stages, certificates, warnings) as JSON.
 *
 * # Safety
 * `verdict` must be a live handle and `out` a valid pointer; release the
 * returned string with [`locclab_string_free`].
 */
enum LoccStatus locclab_verdict_to_json(const struct LoccVerdict *verdict, char **out);

/**
 * Minimum number of product states a one-way distinguishable `n`-set in
 * `C^dA x C^dB` must contain (0 when the bound does not bind).
 */
uintptr_t locclab_min_product_bound(uintptr_t d_a, uintptr_t d_b, uintptr_t n);

/**
 * Release a state-set handle (NULL is a no-op).
 *
 * # Safety
 * `set` must be NULL or a handle produced by this library, not yet freed.
 */
void locclab_state_set_free(struct LoccStateSet *set);

/**
 * Release a verdict handle (NULL is a no-op).
 *
 * # Safety
 * `verdict` must be NULL or a handle produced by this library, not yet freed.
 */
void locclab_verdict_free(struct LoccVerdict *verdict);

/**
 * Release a string returned by this library (NULL is a no-op).
 *
 * # Safety
 * `s` must be NULL or a string produced by this library, not yet freed.
 */
void locclab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOCCLAB_H */
