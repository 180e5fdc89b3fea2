#ifndef MAXCURVE_H
#define MAXCURVE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>

/**
 * Result code of every call.
 */
typedef enum {
  MAXCURVE_STATUS_OK = 0,
  MAXCURVE_STATUS_NULL_POINTER = 1,
  MAXCURVE_STATUS_INVALID_ARGUMENT = 2,
  MAXCURVE_STATUS_BUDGET_EXCEEDED = 3,
  MAXCURVE_STATUS_CHARACTERISTIC_DIVIDES = 4,
  MAXCURVE_STATUS_NO_GENUS_FORMULA = 5,
  MAXCURVE_STATUS_INTERNAL = 6,
} MaxcurveStatus;

/**
 * Opaque plane curve.
 */
typedef struct MaxcurveCurve MaxcurveCurve;

/**
 * Opaque finite field `F_{q^2}`.
 */
typedef struct MaxcurveField MaxcurveField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *maxcurve_last_error(void);

/**
 * Creates `F_{q^2}` with `q = p^k`, within the default size budget.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
MaxcurveStatus maxcurve_field_create(uint64_t p, uint32_t k, MaxcurveField **out);

/**
 * # Safety
 * `field` must come from [`maxcurve_field_create`] and not be freed twice.
 * Null is ignored.
 */
void maxcurve_field_free(MaxcurveField *field);

/**
 * # Safety
 * `field` must be a live handle and `q_out` writable.
 */
MaxcurveStatus maxcurve_field_q(const MaxcurveField *field, uint64_t *q_out);

/**
 * `X^{q+1} + Y^{q+1} + Z^{q+1}`.
 *
 * # Safety
 * `field` must be a live handle and `out` writable. The curve keeps its own
 * reference to the field, which may be freed independently.
 */
MaxcurveStatus maxcurve_curve_hermitian(const MaxcurveField *field, MaxcurveCurve **out);

/**
 * `X^n Y + Y^n Z + Z^n X`.
 *
 * # Safety
 * As for [`maxcurve_curve_hermitian`].
 */
MaxcurveStatus maxcurve_curve_hurwitz(const MaxcurveField *field, uint64_t n, MaxcurveCurve **out);

/**
 * `X^n Y^l + Y^n Z^l + Z^n X^l`.
 *
 * # Safety
 * As for [`maxcurve_curve_hermitian`].
 */
MaxcurveStatus maxcurve_curve_generalized(const MaxcurveField *field,
                                          uint64_t n,
                                          uint64_t l,
                                          MaxcurveCurve **out);

/**
 * `U^m + V^m + W^m`.
 *
 * # Safety
 * As for [`maxcurve_curve_hermitian`].
 */
MaxcurveStatus maxcurve_curve_fermat(const MaxcurveField *field, uint64_t m, MaxcurveCurve **out);

/**
 * # Safety
 * `curve` must come from a constructor and not be freed twice. Null is ignored.
 */
void maxcurve_curve_free(MaxcurveCurve *curve);

/**
 * # Safety
 * `curve` must be a live handle and `out` writable.
 */
MaxcurveStatus maxcurve_curve_degree(const MaxcurveCurve *curve, uint32_t *out);

/**
 * Genus of the curve's nonsingular model.
 *
 * # Safety
 * `curve` must be a live handle and `out` writable.
 */
MaxcurveStatus maxcurve_curve_genus(const MaxcurveCurve *curve, uint64_t *out);

/**
 * Number of `F_{q^2}`-rational points; `budget` caps `q^4` (0 for the default).
 *
 * # Safety
 * `curve` must be a live handle and `out` writable.
 */
MaxcurveStatus maxcurve_count_points(const MaxcurveCurve *curve, uint64_t budget, uint64_t *out);

/**
 * Maximality verdict as a JSON object; release with [`maxcurve_string_free`].
 * `budget` as in [`maxcurve_count_points`].
 *
 * # Safety
 * `curve` must be a live handle and `out` writable.
 */
MaxcurveStatus maxcurve_verdict_json(const MaxcurveCurve *curve, uint64_t budget, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void maxcurve_string_free(char *s);

/**
 * Whether `Hurwitz(n)` is maximal over `F_{q^2}`, `q = p^k`.
 *
 * # Safety
 * `out` must be writable.
 */
MaxcurveStatus maxcurve_hurwitz_criterion(uint64_t n, uint64_t p, uint32_t k, bool *out);

/**
 * Whether `Fermat(m)` is maximal over `F_{q^2}`, `q = p^k`.
 *
 * # Safety
 * `out` must be writable.
 */
MaxcurveStatus maxcurve_fermat_criterion(uint64_t m, uint64_t p, uint32_t k, bool *out);

/**
 * `Q | q + 1` with `Q = n^2 - nl + l^2`: sufficient for maximality of the
 * generalized Hurwitz curve, and necessary when `Q` is prime.
 *
 * # Safety
 * `out` must be writable.
 */
MaxcurveStatus maxcurve_generalized_criterion(uint64_t n,
                                              uint64_t l,
                                              uint64_t p,
                                              uint32_t k,
                                              bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAXCURVE_H */
