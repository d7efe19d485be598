#ifndef COMMUTANT_H
#define COMMUTANT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CmStatus {
  CM_STATUS_OK = 0,
  CM_STATUS_NULL_POINTER = 1,
  CM_STATUS_PARSE = 2,
  CM_STATUS_NON_PRIME_MODULUS = 3,
  CM_STATUS_DIMENSION_MISMATCH = 4,
  CM_STATUS_NON_SQUARE = 5,
  CM_STATUS_SINGULAR = 6,
  CM_STATUS_UNSUPPORTED_FIELD = 7,
  CM_STATUS_OUT_OF_RANGE = 8,
  CM_STATUS_INVALID_ARGUMENT = 9,
  CM_STATUS_INTERNAL = 10,
  CM_STATUS_PANIC = 11,
} CmStatus;

/**
 * A centralizer basis with per-element provenance.
 */
typedef struct CmCentralizer CmCentralizer;

/**
 * A basis of simultaneous intertwiners.
 */
typedef struct CmIntertwinerSpace CmIntertwinerSpace;

/**
 * A matrix over `Z/p` or `Q`.
 */
typedef struct CmMatrix CmMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *cm_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cm_string_free(char *s);

/**
 * Builds a matrix from row-major integers. `modulus` is a prime, or 0 for Q.
 *
 * # Safety
 * `data` must point to `rows * cols` values; `out` must be writable.
 */
enum CmStatus cm_matrix_from_i64(uint64_t modulus,
                                 size_t rows,
                                 size_t cols,
                                 const int64_t *data,
                                 struct CmMatrix **out_matrix);

/**
 * Parses the text input format and picks matrix `name`. A null `name`
 * selects `A`, or the only matrix in the file.
 *
 * # Safety
 * `input` (and `name` when non-null) must be nul-terminated strings.
 */
enum CmStatus cm_matrix_parse(const char *input, const char *name, struct CmMatrix **out_matrix);

/**
 * # Safety
 * `m` must be a live handle or null.
 */
void cm_matrix_free(struct CmMatrix *m);

/**
 * # Safety
 * `m` must be a live handle.
 */
size_t cm_matrix_rows(const struct CmMatrix *m);

/**
 * # Safety
 * `m` must be a live handle.
 */
size_t cm_matrix_cols(const struct CmMatrix *m);

/**
 * Entry `(i, j)` as text such as `"3"` or `"-2/5"`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_matrix_entry(const struct CmMatrix *m, size_t i, size_t j, char **out_text);

/**
 * The matrix as a JSON array of rows of scalar strings.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_matrix_to_json(const struct CmMatrix *m, char **out_json);

/**
 * Writes 1 to `out` if `a` and `b` commute, 0 otherwise.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum CmStatus cm_matrix_commutes(const struct CmMatrix *a,
                                 const struct CmMatrix *b,
                                 int32_t *out_flag);

/**
 * Computes a basis of the centralizer of `a`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_centralizer(const struct CmMatrix *a, struct CmCentralizer **out_basis);

/**
 * # Safety
 * `c` must be a live handle or null.
 */
void cm_centralizer_free(struct CmCentralizer *c);

/**
 * # Safety
 * `c` must be a live handle.
 */
size_t cm_centralizer_dimension(const struct CmCentralizer *c);

/**
 * Copies basis element `k` (0-based) into a new matrix handle.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_centralizer_element(const struct CmCentralizer *c,
                                     size_t k,
                                     struct CmMatrix **out_matrix);

/**
 * Block `(i, j)` (1-based) and power `t` that produced element `k`.
 *
 * # Safety
 * `c` must be a live handle; the out pointers must be writable.
 */
enum CmStatus cm_centralizer_provenance(const struct CmCentralizer *c,
                                        size_t k,
                                        size_t *out_i,
                                        size_t *out_j,
                                        size_t *out_power);

/**
 * `dim C(a)` from the invariant factor degrees.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_frobenius_dimension(const struct CmMatrix *a, size_t *out_dim);

/**
 * Basis of `{U : U a = a' U, U b = b' U}`.
 *
 * # Safety
 * All four handles must be live; `out` must be writable.
 */
enum CmStatus cm_intertwiners(const struct CmMatrix *a,
                              const struct CmMatrix *b,
                              const struct CmMatrix *a_prime,
                              const struct CmMatrix *b_prime,
                              struct CmIntertwinerSpace **out_space);

/**
 * # Safety
 * `s` must be a live handle or null.
 */
void cm_intertwiner_space_free(struct CmIntertwinerSpace *s);

/**
 * # Safety
 * `s` must be a live handle.
 */
size_t cm_intertwiner_dimension(const struct CmIntertwinerSpace *s);

/**
 * `"coset_via_rcf"` or `"brute_kernel"`; a static string, do not free.
 *
 * # Safety
 * `s` must be a live handle.
 */
const char *cm_intertwiner_method(const struct CmIntertwinerSpace *s);

/**
 * Copies basis element `k` (0-based) into a new matrix handle.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_intertwiner_element(const struct CmIntertwinerSpace *s,
                                     size_t k,
                                     struct CmMatrix **out_matrix);

/**
 * Random search for an invertible element. On success with no witness
 * found, `*out` is set to null.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_intertwiner_witness(const struct CmIntertwinerSpace *s,
                                     size_t trials,
                                     uint64_t seed,
                                     struct CmMatrix **out_matrix);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMMUTANT_H */
