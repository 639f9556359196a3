#ifndef DUALNET_H
#define DUALNET_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DnOrder {
  DN_ORDER_LEX = 0,
  DN_ORDER_DEG_REV_LEX = 1,
} DnOrder;

typedef enum DnStatus {
  DN_STATUS_OK = 0,
  DN_STATUS_NULL_POINTER = 1,
  DN_STATUS_INVALID_UTF8 = 2,
  DN_STATUS_PARSE = 3,
  DN_STATUS_INVALID_ARGUMENT = 4,
  DN_STATUS_RING_MISMATCH = 5,
  DN_STATUS_BUDGET = 6,
  DN_STATUS_ARITHMETIC = 7,
  DN_STATUS_OUT_OF_RANGE = 8,
  DN_STATUS_PANIC = 9,
} DnStatus;

/**
 * A reduced Gröbner basis.
 */
typedef struct DnBasis DnBasis;

typedef struct DnPoly DnPoly;

/**
 * A polynomial ring over Q or a prime field.
 */
typedef struct DnRing DnRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Owned by the library;
 * valid until the next call on the same thread.
 */
const char *dn_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void dn_string_free(char *s);

/**
 * Creates a ring with comma-separated variables, largest first. `modulus`
 * 0 means the rationals, otherwise a prime.
 *
 * # Safety
 * `vars` must be a NUL-terminated string; `out` must be writable.
 */
enum DnStatus dn_ring_new(const char *vars,
                          enum DnOrder order,
                          uint64_t modulus,
                          struct DnRing **out);

/**
 * # Safety
 * `ring` must be null or a live handle from [`dn_ring_new`].
 */
void dn_ring_free(struct DnRing *ring);

/**
 * Parses a polynomial in `ring`.
 *
 * # Safety
 * Pointers must be valid; `text` NUL-terminated.
 */
enum DnStatus dn_poly_parse(const struct DnRing *ring, const char *text, struct DnPoly **out);

/**
 * # Safety
 * `poly` must be null or a live handle.
 */
void dn_poly_free(struct DnPoly *poly);

/**
 * Renders a polynomial; release the string with [`dn_string_free`].
 *
 * # Safety
 * Pointers must be valid.
 */
enum DnStatus dn_poly_to_string(const struct DnPoly *poly, char **out);

/**
 * Computes the reduced Gröbner basis of `n` polynomials under the ring's
 * order. `budget_ms` 0 means no budget; exceeding it gives `Budget`.
 *
 * # Safety
 * `polys` must point to `n` live handles from the same ring.
 */
enum DnStatus dn_gb_compute(const struct DnPoly *const *polys,
                            size_t n,
                            uint64_t budget_ms,
                            struct DnBasis **out);

/**
 * # Safety
 * `basis` must be null or a live handle.
 */
void dn_basis_free(struct DnBasis *basis);

/**
 * Number of generators.
 *
 * # Safety
 * Pointers must be valid.
 */
enum DnStatus dn_basis_len(const struct DnBasis *basis, size_t *out);

/**
 * Copies generator `index` into a new polynomial handle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum DnStatus dn_basis_generator(const struct DnBasis *basis, size_t index, struct DnPoly **out);

/**
 * Ideal membership: writes 1 if `poly` lies in the ideal, else 0.
 *
 * # Safety
 * Pointers must be valid.
 */
enum DnStatus dn_basis_contains(const struct DnBasis *basis,
                                const struct DnPoly *poly,
                                int32_t *out);

/**
 * Runs a verification task and writes its JSON report. `task` is
 * `c3c3`, `c3c3:uv`, `c3c3:ab`, `c3c3:theorem`, `c2c4`, `c2c4:literal` or
 * `alt4:p1,p2,...`. `exit_code` receives the CLI exit code (0 pass, 1
 * failure, 3 budget exceeded).
 *
 * # Safety
 * Pointers must be valid; `task` NUL-terminated.
 */
enum DnStatus dn_verify(const char *task, char **json, int32_t *exit_code);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DUALNET_H */
