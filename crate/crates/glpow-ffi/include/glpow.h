#ifndef GLPOW_H
#define GLPOW_H

/* Generated by cbindgen from the glpow-ffi crate. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible binding.
 */
typedef enum GlpStatus {
  /**
   * The call succeeded.
   */
  GLP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  GLP_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  GLP_STATUS_INVALID_UTF8 = 2,
  /**
   * An argument failed to parse: field descriptor, series name,
   * class-data JSON, or an out-of-range coefficient.
   */
  GLP_STATUS_PARSE_ERROR = 3,
  /**
   * A mathematical precondition failed: not prime, not coprime,
   * not irreducible, and so on.
   */
  GLP_STATUS_DOMAIN_ERROR = 4,
  /**
   * No decision criterion covers the requested case.
   */
  GLP_STATUS_UNSUPPORTED = 5,
  /**
   * The named series is not defined under the given hypotheses.
   */
  GLP_STATUS_HYPOTHESIS_VIOLATED = 6,
  /**
   * An enumeration or census exceeded its configured limit.
   */
  GLP_STATUS_LIMIT_EXCEEDED = 7,
  /**
   * An internal invariant failed; library state remains sound.
   */
  GLP_STATUS_INTERNAL_ERROR = 8,
} GlpStatus;

/**
 * An opaque finite-field handle.
 */
typedef struct GlpField GlpField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a field handle from a descriptor: "p", "p^k", or
 * "p^k/c0,c1,...". On success `*out` owns the handle; release it with
 * `glp_field_free`.
 */
enum GlpStatus glp_field_new(const char *descriptor, struct GlpField **out);

/**
 * Releases a field handle. Null is a no-op.
 */
void glp_field_free(struct GlpField *field);

/**
 * Writes the order q of the field to `*out`.
 */
enum GlpStatus glp_field_order(const struct GlpField *field, uint64_t *out);

/**
 * Writes the full normalized descriptor "p^k/c0,c1,..." to `*out`.
 */
enum GlpStatus glp_field_descriptor(const struct GlpField *field, char **out);

/**
 * Writes N_M(q, d), the number of degree-d irreducibles other than x whose
 * companion classes are M-th powers, to `*out` as a decimal string.
 */
enum GlpStatus glp_count_nm(const struct GlpField *field, uint64_t m, uint32_t d, char **out);

/**
 * Writes N_M^i(q, d), the degree-d irreducible count in power-map stratum
 * i for a prime-power M coprime to q, to `*out` as a decimal string.
 */
enum GlpStatus glp_count_nmi(const struct GlpField *field,
                             uint64_t m,
                             uint32_t d,
                             uint32_t i,
                             char **out);

/**
 * Writes |Θ_M(Λ(n))|, the number of weight-n partitions in the image of
 * the Jordan-block power map, to `*out` as a decimal string.
 */
enum GlpStatus glp_theta_image_count(uint64_t n, uint64_t m, char **out);

/**
 * Evaluates the named catalogue series at the field's order, truncated at
 * `order`, and writes it to `*out` as a JSON document
 * {"order": N, "coeffs": ["num/den", ...]}. Pass `m = 0` for entries that
 * take no power M.
 */
enum GlpStatus glp_series_json(const struct GlpField *field,
                               const char *name,
                               uint64_t m,
                               uint32_t order,
                               char **out);

/**
 * Classifies one irreducible polynomial, given as `len` constant-first
 * coefficient indices, under the power map for M. Writes a JSON report
 * with M-power membership, stratum, and the factor profile of f(x^M).
 */
enum GlpStatus glp_classify_poly_json(const struct GlpField *field,
                                      uint64_t m,
                                      const uint64_t *coeffs,
                                      size_t len,
                                      char **out);

/**
 * Decides whether the conjugacy class described by `data_json` (the
 * {"field": ..., "entries": [...]} form) is an M-th power. Writes a JSON
 * report with the class invariants, the verdict, and the image class
 * under powering when defined.
 */
enum GlpStatus glp_class_decide_json(const char *data_json, uint64_t m, char **out);

/**
 * Writes a copy of the most recent error message on this thread to
 * `*out`, or null when the last call succeeded. The caller releases a
 * non-null result with `glp_string_free`.
 */
enum GlpStatus glp_last_error(char **out);

/**
 * Releases a string produced by this library. Null is a no-op.
 */
void glp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GLPOW_H */
