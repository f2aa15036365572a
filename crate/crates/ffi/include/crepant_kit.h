#ifndef CREPANT_KIT_H
#define CREPANT_KIT_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CkStatus {
  CK_STATUS_OK = 0,
  CK_STATUS_NULL_POINTER = 1,
  CK_STATUS_INVALID_ARGUMENT = 2,
  CK_STATUS_NOT_GORENSTEIN = 3,
  CK_STATUS_BUFFER_TOO_SMALL = 4,
  CK_STATUS_OVERFLOW = 5,
  CK_STATUS_PANIC = 6,
} CkStatus;

/**
 * Opaque handle for `C^n/Z_d` with the scalar action.
 */
typedef struct CkQuotient CkQuotient;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread, or NULL. Valid until the next failing
 * call on the same thread.
 */
const char *ck_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ck_version(void);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum CkStatus ck_quotient_new(uint32_t n, uint32_t d, struct CkQuotient **out);

/**
 * # Safety
 * `q` must come from [`ck_quotient_new`] and not be freed twice. NULL is
 * ignored.
 */
void ck_quotient_free(struct CkQuotient *q);

/**
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum CkStatus ck_quotient_is_gorenstein(const struct CkQuotient *q, bool *out);

/**
 * Twist `c` with `ω_X̃ = t^*O(c)`.
 *
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum CkStatus ck_canonical_twist(const struct CkQuotient *q, int64_t *out);

/**
 * Discrepancy as a reduced fraction. When `d ∤ n` the fraction is still
 * written and `CK_STATUS_NOT_GORENSTEIN` is returned.
 *
 * # Safety
 * `q` must be a live handle; `numer` and `denom` writable.
 */
enum CkStatus ck_discrepancy(const struct CkQuotient *q, int64_t *numer, int64_t *denom);

/**
 * `out_offending_i` / `out_offending_m` are set to -1 when the higher
 * direct images vanish.
 *
 * # Safety
 * All out pointers must be writable.
 */
enum CkStatus ck_pushforward_vanishing(uint32_t n,
                                       uint32_t d,
                                       int64_t twist,
                                       bool *out_vanishes,
                                       int64_t *out_offending_i,
                                       int64_t *out_offending_m);

/**
 * `h^0..h^{n-1}` of `O(k)` on `P^{n-1}`. `written` receives the number of
 * entries, also when the buffer is too small.
 *
 * # Safety
 * `out` must hold `capacity` writable slots; `written` must be writable.
 */
enum CkStatus ck_bott_cohomology(uint32_t n,
                                 int64_t k,
                                 uint64_t *out,
                                 uintptr_t capacity,
                                 uintptr_t *written);

/**
 * Graded dimensions of `Hom(t^*O(-a), t^*O(-b))` for fiber degrees
 * `0..=max_fiber_degree`.
 *
 * # Safety
 * `q` must be a live handle; `out` must hold `capacity` slots.
 */
enum CkStatus ck_hom_hilbert(const struct CkQuotient *q,
                             uint32_t a,
                             uint32_t b,
                             uintptr_t max_fiber_degree,
                             uint64_t *out,
                             uintptr_t capacity,
                             uintptr_t *written);

/**
 * The skew group algebra side of [`ck_hom_hilbert`].
 *
 * # Safety
 * As for [`ck_hom_hilbert`].
 */
enum CkStatus ck_skew_hom_hilbert(const struct CkQuotient *q,
                                  uint32_t a,
                                  uint32_t b,
                                  uintptr_t max_fiber_degree,
                                  uint64_t *out,
                                  uintptr_t capacity,
                                  uintptr_t *written);

/**
 * # Safety
 * `q` must be a live handle and `out_passed` writable.
 */
enum CkStatus ck_tilting_check(const struct CkQuotient *q,
                               uintptr_t max_fiber_degree,
                               bool *out_passed);

/**
 * # Safety
 * `q` must be a live handle; out pointers writable.
 */
enum CkStatus ck_sod_check(const struct CkQuotient *q, bool *out_passed, uint32_t *out_blocks);

/**
 * Full instance report as JSON; the same document `crepant-kit analyze
 * --format json` prints. `out_verdict_code` receives the CLI exit code
 * (0 pass, 1 otherwise).
 *
 * # Safety
 * `out_json` and `out_verdict_code` must be writable. Free the string with
 * [`ck_string_free`].
 */
enum CkStatus ck_analyze_json(uint32_t n,
                              uint32_t d,
                              uintptr_t max_degree,
                              char **out_json,
                              int32_t *out_verdict_code);

/**
 * Molien report as JSON for a diagonal action with `weights_len` weights.
 *
 * # Safety
 * `weights` must point to `weights_len` readable values; `out_json` must be
 * writable. Free the string with [`ck_string_free`].
 */
enum CkStatus ck_molien_json(uint32_t d,
                             const int64_t *weights,
                             uintptr_t weights_len,
                             uintptr_t max_degree,
                             char **out_json);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. NULL is ignored.
 */
void ck_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CREPANT_KIT_H */
