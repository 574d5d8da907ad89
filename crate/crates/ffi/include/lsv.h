#ifndef LSV_H
#define LSV_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LsvStatus {
  LSV_STATUS_OK = 0,
  LSV_STATUS_NULL_ARGUMENT = 1,
  LSV_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed text or a basis element outside the algebra.
   */
  LSV_STATUS_PARSE_ERROR = 3,
  /**
   * Bad configuration or an input the computation cannot accept.
   */
  LSV_STATUS_INVALID_INPUT = 4,
  /**
   * The computation ran and produced a failure witness.
   */
  LSV_STATUS_CHECK_FAILED = 5,
  LSV_STATUS_PANIC = 6,
} LsvStatus;

/**
 * A group `(Gamma, s)` together with the window used for checks.
 */
typedef struct LsvAlgebra LsvAlgebra;

/**
 * An element of the algebra.
 */
typedef struct LsvElement LsvElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer stays
 * valid until the next library call on the same thread.
 */
const char *lsv_last_error(void);

/**
 * The default algebra: Gamma = Z, s = 1/2, window (3, 3).
 */
struct LsvAlgebra *lsv_algebra_new_default(void);

/**
 * Build an algebra from a JSON group configuration such as
 * `{"field":"Q","gamma_generators":["2"],"s":"1"}`.
 *
 * # Safety
 * `config_json` must be a nul-terminated string and `out` a valid pointer.
 */
enum LsvStatus lsv_algebra_from_config(const char *config_json, struct LsvAlgebra **out);

/**
 * Replace the check window.
 *
 * # Safety
 * `alg` must come from this library and not be freed.
 */
enum LsvStatus lsv_algebra_set_window(struct LsvAlgebra *alg,
                                      uint32_t gamma_height,
                                      uint32_t loop_bound);

/**
 * # Safety
 * `alg` must be null or come from this library, and is invalid afterwards.
 */
void lsv_algebra_free(struct LsvAlgebra *alg);

/**
 * Parse an element such as `2*L(1,0) - 1/2*Y(1/2,3)`.
 *
 * # Safety
 * `alg` must be a live handle, `text` nul-terminated, `out` valid.
 */
enum LsvStatus lsv_element_parse(const struct LsvAlgebra *alg,
                                 const char *text,
                                 struct LsvElement **out);

/**
 * `[x, y]` as a new element.
 *
 * # Safety
 * `x` and `y` must be live handles, `out` valid.
 */
enum LsvStatus lsv_element_bracket(const struct LsvElement *x,
                                   const struct LsvElement *y,
                                   struct LsvElement **out);

/**
 * 1 if `x` is zero, 0 otherwise, -1 for a null handle.
 *
 * # Safety
 * `x` must be null or a live handle.
 */
int32_t lsv_element_is_zero(const struct LsvElement *x);

/**
 * Text form of `x`; free with [`lsv_string_free`]. Null for a null handle.
 *
 * # Safety
 * `x` must be null or a live handle.
 */
char *lsv_element_to_string(const struct LsvElement *x);

/**
 * # Safety
 * `x` must be null or come from this library, and is invalid afterwards.
 */
void lsv_element_free(struct LsvElement *x);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void lsv_string_free(char *s);

/**
 * Antisymmetry and Jacobi over the window. Writes the number of failing
 * instances to `failures`; returns `CHECK_FAILED` when it is nonzero.
 *
 * # Safety
 * `alg` must be a live handle and `failures` valid.
 */
enum LsvStatus lsv_check_jacobi(const struct LsvAlgebra *alg, size_t *failures);

/**
 * Reduce a cocycle given as JSON (`{"classes":..,"f":..}` or `{"table":..}`)
 * and write the report, e.g. `{"classes":{"0":"3"},"residual":"0"}`, to `out`.
 * A nonzero residual still writes the report and returns `CHECK_FAILED`.
 *
 * # Safety
 * `alg` must be a live handle, `cocycle_json` nul-terminated, `out` valid.
 */
enum LsvStatus lsv_cocycle_class(const struct LsvAlgebra *alg,
                                 const char *cocycle_json,
                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LSV_H */
