#ifndef XADD_H
#define XADD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Rounding modes, passed to [`xadd_add`] as `int32_t`.
 */
typedef enum XaddMode {
  XADD_MODE_DOWN = 0,
  XADD_MODE_UP = 1,
  XADD_MODE_ZERO = 2,
  XADD_MODE_NEAREST = 3,
} XaddMode;

typedef enum XaddStatus {
  XADD_STATUS_OK = 0,
  XADD_STATUS_NULL_POINTER = 1,
  XADD_STATUS_INVALID_UTF8 = 2,
  XADD_STATUS_PARSE = 3,
  XADD_STATUS_INVALID_PRECISION = 4,
  XADD_STATUS_INVALID_MODE = 5,
  XADD_STATUS_NOT_POSITIVE = 6,
  XADD_STATUS_OVERFLOW = 7,
  XADD_STATUS_INTERNAL = 8,
} XaddStatus;

/**
 * Opaque handle to a float.
 */
typedef struct XaddFloat XaddFloat;

/**
 * Work counters for one addition.
 */
typedef struct XaddStats {
  uint64_t trailing_bits_examined;
  uint64_t x_limbs_read;
  uint64_t y_limbs_read;
  /**
   * Main-term case, 1 to 10.
   */
  uint32_t case_row;
} XaddStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `0.<bits>[e<exp>]` (optionally with a leading `-`) into a new handle.
 *
 * # Safety
 * `text` must be null or a NUL-terminated string; `out` must be null or
 * valid for writes.
 */
enum XaddStatus xadd_parse(const char *text, struct XaddFloat **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `x` must be null or a handle not yet freed.
 */
void xadd_free(struct XaddFloat *x);

/**
 * Writes the text form of `x` into a new string owned by the caller, to be
 * released with [`xadd_string_free`].
 *
 * # Safety
 * `x` must be null or a live handle; `out` must be null or valid for writes.
 */
enum XaddStatus xadd_format(const struct XaddFloat *x, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by [`xadd_format`].
 */
void xadd_string_free(char *s);

/**
 * Precision in bits; 0 for null.
 *
 * # Safety
 * `x` must be null or a live handle.
 */
uint64_t xadd_precision(const struct XaddFloat *x);

/**
 * Exponent `e` in `0.1b2...bp * 2^e`; 0 for null.
 *
 * # Safety
 * `x` must be null or a live handle.
 */
int64_t xadd_exponent(const struct XaddFloat *x);

/**
 * Rounds `x + y` to `prec` bits. On success `*out` receives a new handle and
 * `*ternary` the sign of `result - (x + y)`. On overflow the status is
 * `XADD_STATUS_OVERFLOW`, `*out` is set to null and `*ternary` still holds
 * the ternary value. `stats` may be null.
 *
 * # Safety
 * `x`, `y` must be null or live handles; `out`, `ternary` must be null or
 * valid for writes; `stats` must be null or valid for writes.
 */
enum XaddStatus xadd_add(const struct XaddFloat *x,
                         const struct XaddFloat *y,
                         uint64_t prec,
                         int32_t mode,
                         struct XaddFloat **out,
                         int8_t *ternary,
                         struct XaddStats *stats);

/**
 * Static description of a status code.
 */
const char *xadd_status_message(enum XaddStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XADD_H */
