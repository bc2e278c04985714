#ifndef MULTISEG_H
#define MULTISEG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of every fallible call.
 */
typedef enum MsStatus {
  MsStatus_Ok = 0,
  MsStatus_NullPointer = 1,
  MsStatus_InvalidUtf8 = 2,
  MsStatus_Parse = 3,
  MsStatus_Domain = 4,
  MsStatus_ResourceLimit = 5,
  MsStatus_Internal = 6,
  MsStatus_Panic = 7,
} MsStatus;

/**
 * A multisegment owned by the library.
 */
typedef struct MsMultisegment MsMultisegment;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `{"segments":[[b,e],...]}` or `{[b,e],[k]}` into a new handle.
 *
 * # Safety
 * `json` is a nul-terminated string; `out` is writable.
 */
enum MsStatus ms_multisegment_from_json(const char *json, struct MsMultisegment **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `handle` is null or an unreleased handle from this library.
 */
void ms_multisegment_free(struct MsMultisegment *handle);

/**
 * Number of segments, or 0 for a null handle.
 *
 * # Safety
 * `handle` is null or a live handle.
 */
uintptr_t ms_multisegment_len(const struct MsMultisegment *handle);

/**
 * Total number of integers counted with multiplicity, or 0 for null.
 *
 * # Safety
 * `handle` is null or a live handle.
 */
uint64_t ms_multisegment_degree(const struct MsMultisegment *handle);

/**
 * Canonical JSON of a handle.
 *
 * # Safety
 * `handle` is a live handle; `out` is writable.
 */
enum MsStatus ms_multisegment_to_json(const struct MsMultisegment *handle, char **out);

/**
 * The multiplicity `m(b, a)`.
 *
 * # Safety
 * `b` and `a` are live handles; `out` is writable.
 */
enum MsStatus ms_mult(const struct MsMultisegment *b,
                      const struct MsMultisegment *a,
                      uint64_t *out);

/**
 * Coefficients of `P_{x,w}` as a JSON array, constant term first.
 * Permutations are in one-line notation such as `"1324"`.
 *
 * # Safety
 * `x` and `w` are nul-terminated strings; `out` is writable.
 */
enum MsStatus ms_kl_polynomial(const char *x, const char *w, char **out);

/**
 * The symmetrization data of `a` as JSON.
 *
 * # Safety
 * `a` is a live handle; `out` is writable.
 */
enum MsStatus ms_symmetrize_json(const struct MsMultisegment *a, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` is null or an unreleased string from this library.
 */
void ms_string_free(char *s);

/**
 * Message for the last failed call on this thread; empty after success.
 * Valid until the next call into the library on the same thread.
 */
const char *ms_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTISEG_H */
