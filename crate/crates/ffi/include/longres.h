#ifndef LONGRES_H
#define LONGRES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum LrStatus {
  LR_STATUS_OK = 0,
  LR_STATUS_NULL_POINTER = 1,
  LR_STATUS_INVALID_UTF8 = 2,
  LR_STATUS_PARSE = 3,
  LR_STATUS_BAD_INPUT = 4,
  LR_STATUS_NOT_POSITIVE_REAL = 5,
  LR_STATUS_OUT_OF_RANGE = 6,
  LR_STATUS_FAILED = 7,
  LR_STATUS_PANIC = 8,
} LrStatus;

// Outcome of `lr_check`.
typedef enum LrVerdict {
  LR_VERDICT_CERTIFIED_POSITIVE = 0,
  LR_VERDICT_VIOLATION = 1,
  LR_VERDICT_UNKNOWN = 2,
} LrVerdict;

// Rational matrix function `P / q`.
typedef struct LrFunction LrFunction;

// Pencil realizing a function.
typedef struct LrRealization LrRealization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer is
// valid until the next call on the same thread.
const char *lr_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void lr_string_free(char *s);

// Parses a function from JSON text `{"d", "num", "den"}`.
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum LrStatus lr_function_from_json(const char *json, struct LrFunction **out);

// Serializes a function back to JSON. Free the result with `lr_string_free`.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum LrStatus lr_function_to_json(const struct LrFunction *f, char **out);

// Number of variables, or 0 for a null handle.
//
// # Safety
// `f` must be null or a live handle.
size_t lr_function_nvars(const struct LrFunction *f);

// Matrix size `m`, or 0 for a null handle.
//
// # Safety
// `f` must be null or a live handle.
size_t lr_function_size(const struct LrFunction *f);

// # Safety
// `f` must be null or a handle not yet freed.
void lr_function_free(struct LrFunction *f);

// Positivity check. A non-constant or indefinite linear term yields
// `NOT_POSITIVE_REAL` rather than a verdict.
//
// # Safety
// `f` must be a live handle and `verdict` a valid pointer.
enum LrStatus lr_check(const struct LrFunction *f, uint64_t seed, enum LrVerdict *verdict);

// Synthesizes a pencil for `f`, verified at random points drawn from `seed`.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum LrStatus lr_synthesize(const struct LrFunction *f, uint64_t seed, struct LrRealization **out);

// Pencil size `N`, or 0 for a null handle.
//
// # Safety
// `r` must be null or a live handle.
size_t lr_realization_size(const struct LrRealization *r);

// Number of pencil coefficients, or 0 for a null handle.
//
// # Safety
// `r` must be null or a live handle.
size_t lr_realization_nvars(const struct LrRealization *r);

// Size of the leading block, or 0 for a null handle.
//
// # Safety
// `r` must be null or a live handle.
size_t lr_realization_block(const struct LrRealization *r);

// Whether every pencil coefficient was verified PSD in exact arithmetic.
//
// # Safety
// `r` must be null or a live handle.
bool lr_realization_is_exact(const struct LrRealization *r);

// Copies coefficient `k` row-major into `buf`, which holds `len >= N*N`
// doubles.
//
// # Safety
// `r` must be a live handle and `buf` valid for `len` writes.
enum LrStatus lr_realization_coefficient(const struct LrRealization *r,
                                         size_t k,
                                         double *buf,
                                         size_t len);

// Exact pencil as JSON: `{"m", "size", "coefficients": [[["p/q", ...], ...], ...]}`.
// Free the result with `lr_string_free`.
//
// # Safety
// `r` must be a live handle and `out` a valid pointer.
enum LrStatus lr_realization_to_json(const struct LrRealization *r, char **out);

// # Safety
// `r` must be null or a handle not yet freed.
void lr_realization_free(struct LrRealization *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LONGRES_H */
