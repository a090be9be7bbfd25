#ifndef HOWE_KOSTANT_H
#define HOWE_KOSTANT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum HkStatus {
  HK_STATUS_OK = 0,
  HK_STATUS_NULL_POINTER = 1,
  HK_STATUS_INVALID_UTF8 = 2,
  HK_STATUS_INVALID_ARGUMENT = 3,
  HK_STATUS_COMPUTATION_FAILED = 4,
  HK_STATUS_PANIC = 5,
} HkStatus;

/**
 * Opaque dual-pair specification.
 */
typedef struct HkSpec HkSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hk_version(void);

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *hk_last_error_message(void);

/**
 * Creates a dual-pair handle.
 *
 * `side` is `positive`, `super` or `negative`; `tag` is `a`, `b`, `c`, `d` or `b0`.
 * `p`, `q`, `m`, `n` are used on the super side only.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum HkStatus hk_spec_new(const char *side,
                          const char *tag,
                          uint32_t d,
                          size_t p,
                          size_t q,
                          size_t m,
                          size_t n,
                          uint32_t degree,
                          struct HkSpec **out);

/**
 * Releases a handle from [`hk_spec_new`]; null is ignored.
 *
 * # Safety
 * `spec` must come from [`hk_spec_new`] and not be freed twice.
 */
void hk_spec_free(struct HkSpec *spec);

/**
 * Releases a string returned through an output pointer; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void hk_string_free(char *s);

/**
 * Parameters of the handle as a JSON object.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum HkStatus hk_spec_params_json(const struct HkSpec *spec, char **out);

/**
 * Character of the module labelled by `lambda`, as JSON.
 *
 * # Safety
 * `spec` must be a live handle; `lambda` NUL-terminated; `out` writable.
 */
enum HkStatus hk_module_char_json(const struct HkSpec *spec, const char *lambda, char **out);

/**
 * `k`-th homology character with its contributors, as JSON.
 *
 * # Safety
 * `spec` must be a live handle; `lambda` NUL-terminated; `out` writable.
 */
enum HkStatus hk_homology_json(const struct HkSpec *spec,
                               const char *lambda,
                               uint32_t k,
                               char **out);

/**
 * Checks the duality identity; writes the verdict to `ok`.
 *
 * # Safety
 * `spec` must be a live handle; `ok` writable.
 */
enum HkStatus hk_verify_duality(const struct HkSpec *spec, bool *ok);

/**
 * Checks the Euler-Poincare identity for `lambda`; writes the verdict to `ok`.
 *
 * # Safety
 * `spec` must be a live handle; `lambda` NUL-terminated; `ok` writable.
 */
enum HkStatus hk_verify_euler_poincare(const struct HkSpec *spec, const char *lambda, bool *ok);

/**
 * Checks omega transport of the `k`-th homology; writes the verdict to `ok`.
 *
 * # Safety
 * `spec` must be a live handle; `lambda` NUL-terminated; `ok` writable.
 */
enum HkStatus hk_verify_omega(const struct HkSpec *spec, const char *lambda, uint32_t k, bool *ok);

/**
 * Runs one JSON job in the batch format and writes the result object.
 * `exit_code` receives the code the command line would return.
 *
 * # Safety
 * `job` NUL-terminated; `out` and `exit_code` writable.
 */
enum HkStatus hk_run_job_json(const char *job, char **out, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOWE_KOSTANT_H */
