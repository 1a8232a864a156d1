#ifndef LATPOLY_H
#define LATPOLY_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LpStatus {
  LP_STATUS_OK = 0,
  LP_STATUS_NULL_POINTER = 1,
  LP_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input text.
   */
  LP_STATUS_PARSE = 3,
  /**
   * Well-formed input rejected by a domain rule.
   */
  LP_STATUS_DOMAIN = 4,
  LP_STATUS_OVERFLOW = 5,
  LP_STATUS_OUT_OF_RANGE = 6,
  LP_STATUS_PANIC = 7,
} LpStatus;

typedef struct LpMatching LpMatching;

typedef struct LpPath LpPath;

typedef struct LpPoly LpPoly;

typedef struct LpTree LpTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Owned by the
 * library; valid until the next failing call on the same thread.
 */
const char *lp_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void lp_string_free(char *s);

/**
 * `L(i, j)(x)`; the zero polynomial above the line `x = 2y`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum LpStatus lp_lattice_poly(uint32_t i, uint32_t j, struct LpPoly **out);

/**
 * Brute-force `Q(i, j)(x)` over 12312-avoiding partial matchings in class Q.
 *
 * # Safety
 * As [`lp_lattice_poly`].
 */
enum LpStatus lp_q_poly(uint32_t i, uint32_t j, struct LpPoly **out);

/**
 * Brute-force `R_n(x)` over even trees with `2n` edges.
 *
 * # Safety
 * As [`lp_lattice_poly`].
 */
enum LpStatus lp_r_poly(uint32_t n, struct LpPoly **out);

/**
 * `sum_k T(n, k) x^k`.
 *
 * # Safety
 * As [`lp_lattice_poly`].
 */
enum LpStatus lp_t_poly(uint32_t n, struct LpPoly **out);

/**
 * # Safety
 * As [`lp_lattice_poly`].
 */
enum LpStatus lp_descent_formula(uint32_t n, struct LpPoly **out);

/**
 * Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
 * Returns 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
size_t lp_poly_len(const struct LpPoly *p);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum LpStatus lp_poly_coeff(const struct LpPoly *p, size_t k, int64_t *out);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum LpStatus lp_poly_eval_at_one(const struct LpPoly *p, int64_t *out);

/**
 * Text rendering such as `2 + 3*x + 2*x^2`.
 *
 * # Safety
 * `p` must be a live handle; `out` receives a string for [`lp_string_free`].
 */
enum LpStatus lp_poly_to_string(const struct LpPoly *p, char **out);

/**
 * # Safety
 * `p` must be NULL or a handle not yet freed.
 */
void lp_poly_free(struct LpPoly *p);

/**
 * # Safety
 * `out` must be writable.
 */
enum LpStatus lp_t_coeff(uint32_t n, uint32_t k, int64_t *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum LpStatus lp_catalan3(uint32_t n, int64_t *out);

/**
 * Parses an `E`/`N` string.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` writable.
 */
enum LpStatus lp_path_parse(const char *text, struct LpPath **out);

/**
 * Number of north steps at odd x. Returns 0 for NULL.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
uint32_t lp_path_weight(const struct LpPath *p);

/**
 * # Safety
 * `p` must be a live handle; `i` and `j` writable.
 */
enum LpStatus lp_path_endpoint(const struct LpPath *p, uint32_t *i, uint32_t *j);

/**
 * # Safety
 * `p` must be a live handle; `out` receives a string for [`lp_string_free`].
 */
enum LpStatus lp_path_to_string(const struct LpPath *p, char **out);

/**
 * # Safety
 * `p` must be NULL or a handle not yet freed.
 */
void lp_path_free(struct LpPath *p);

/**
 * # Safety
 * `p` must be a live path handle; `out` writable.
 */
enum LpStatus lp_path_to_matching(const struct LpPath *p, struct LpMatching **out);

/**
 * Parses `{"m": .., "edges": [[a, b], ..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` writable.
 */
enum LpStatus lp_matching_from_json(const char *json, struct LpMatching **out);

/**
 * # Safety
 * `m` must be a live handle; `out` receives a string for [`lp_string_free`].
 */
enum LpStatus lp_matching_to_json(const struct LpMatching *m, char **out);

/**
 * Generalized crossing number. Returns 0 for NULL.
 *
 * # Safety
 * `m` must be NULL or a live handle.
 */
uint32_t lp_matching_crossings(const struct LpMatching *m);

/**
 * Inverse bijection; `LpStatus::Domain` when the matching is outside
 * `Q(12312)`.
 *
 * # Safety
 * `m` must be a live handle; `out` writable.
 */
enum LpStatus lp_matching_to_path(const struct LpMatching *m, struct LpPath **out);

/**
 * # Safety
 * `m` must be NULL or a handle not yet freed.
 */
void lp_matching_free(struct LpMatching *m);

/**
 * # Safety
 * `p` must be a live path handle; `out` writable.
 */
enum LpStatus lp_path_to_tree(const struct LpPath *p, struct LpTree **out);

/**
 * Parses either the JSON object `{"dotted": .., "root": [..]}` or the
 * parenthesis encoding (optionally `*`-prefixed).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` writable.
 */
enum LpStatus lp_tree_parse(const char *text, struct LpTree **out);

/**
 * # Safety
 * `t` must be a live handle; `out` receives a string for [`lp_string_free`].
 */
enum LpStatus lp_tree_to_json(const struct LpTree *t, char **out);

/**
 * # Safety
 * `t` must be a live handle; `out` receives a string for [`lp_string_free`].
 */
enum LpStatus lp_tree_to_parens(const struct LpTree *t, char **out);

/**
 * Returns 0 for NULL.
 *
 * # Safety
 * `t` must be NULL or a live handle.
 */
uint32_t lp_tree_r_index(const struct LpTree *t);

/**
 * Returns 0 for NULL.
 *
 * # Safety
 * `t` must be NULL or a live handle.
 */
size_t lp_tree_edges(const struct LpTree *t);

/**
 * Inverse generation for a tree produced at position `(i, j)`.
 *
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
enum LpStatus lp_tree_to_path(const struct LpTree *t, uint32_t i, uint32_t j, struct LpPath **out);

/**
 * # Safety
 * `t` must be NULL or a handle not yet freed.
 */
void lp_tree_free(struct LpTree *t);

/**
 * Runs the identity suite up to `max_n`. `overall` receives the verdict;
 * `report_json`, if not NULL, receives the full report.
 *
 * # Safety
 * `overall` must be writable; `report_json` NULL or writable.
 */
enum LpStatus lp_verify(uint32_t max_n, uint64_t seed, bool *overall, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LATPOLY_H */
