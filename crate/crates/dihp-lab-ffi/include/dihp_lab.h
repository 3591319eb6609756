#ifndef DIHP_LAB_H
#define DIHP_LAB_H

/* Generated by cbindgen from the dihp-lab-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum DihpLabStatus {
  DIHP_LAB_STATUS_OK = 0,
  DIHP_LAB_STATUS_INTERNAL_ERROR = 1,
  DIHP_LAB_STATUS_INVALID_INPUT = 2,
  DIHP_LAB_STATUS_CAP_EXCEEDED = 3,
  DIHP_LAB_STATUS_VERIFICATION_FAILED = 4,
} DihpLabStatus;

/**
 * Opaque CSP instance handle.
 */
typedef struct DihpLabInstance DihpLabInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *dihp_lab_version(void);

/**
 * Message describing the most recent error on this thread; valid until the
 * next failing call. Do not free.
 */
const char *dihp_lab_last_error_message(void);

/**
 * Releases a string returned through an `out` parameter.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library and not yet
 * freed; null is ignored.
 */
void dihp_lab_string_free(char *s);

/**
 * Parses an instance from its JSON document into an opaque handle.
 *
 * # Safety
 * `json` must be a valid nul-terminated string; `out` must be a valid
 * pointer to receive the handle.
 */
enum DihpLabStatus dihp_lab_instance_parse(const char *json, struct DihpLabInstance **out);

/**
 * Releases an instance handle.
 *
 * # Safety
 * `h` must come from [`dihp_lab_instance_parse`] and not be freed twice;
 * null is ignored.
 */
void dihp_lab_instance_free(struct DihpLabInstance *h);

/**
 * Computes `{instance_hash, val, val_lp, ratio}` as a JSON string with exact
 * `p/q` rationals.
 *
 * # Safety
 * `h` must be a live handle; `out_json` must be valid.
 */
enum DihpLabStatus dihp_lab_lp_report(const struct DihpLabInstance *h, char **out_json);

/**
 * Builds the communication game from the instance (canonical one-wise
 * solution when it exists, LP optimum otherwise) and measures a protocol's
 * advantage. `protocol` is one of `constant`, `echo`, `cycle-consistency`,
 * `full-information`; `exact_mode != 0` enumerates instead of sampling. The
 * result is an experiment-record JSON string.
 *
 * # Safety
 * `h`, `protocol`, and `out_json` must be valid pointers.
 */
enum DihpLabStatus dihp_lab_game_advantage(const struct DihpLabInstance *h,
                                           uint32_t n,
                                           uint64_t alpha_num,
                                           uint64_t alpha_den,
                                           uint32_t players_per_edge,
                                           const char *protocol,
                                           int32_t exact_mode,
                                           uint64_t trials,
                                           uint64_t seed,
                                           char **out_json);

/**
 * Runs a verification suite (`fourier`, `kernels`, `rectangles`,
 * `combinatorics`, or `all`) and returns its manifest JSON. Returns
 * `VerificationFailed` when any check fails; the manifest is still written.
 *
 * # Safety
 * `suite` and `out_json` must be valid pointers.
 */
enum DihpLabStatus dihp_lab_verify(const char *suite, uint64_t seed, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIHP_LAB_H */
