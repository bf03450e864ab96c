/* Generated by cbindgen from the relalg-ffi crate. Do not edit. */

#ifndef RELALG_H
#define RELALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum RaStatus {
  RA_STATUS_OK = 0,
  RA_STATUS_NULL_POINTER = 1,
  RA_STATUS_INVALID_UTF8 = 2,
  RA_STATUS_INVALID_ARGUMENT = 3,
  RA_STATUS_SYNTAX = 4,
  RA_STATUS_JSON = 5,
  RA_STATUS_TOO_LARGE = 6,
  RA_STATUS_PANIC = 99,
} RaStatus;

// An atom structure.
typedef struct RaAlgebra RaAlgebra;

// A parsed equation.
typedef struct RaEquation RaEquation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *ra_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ra_string_free(char *s);

// Builds the Lyndon algebra with `n` diversity atoms.
//
// # Safety
// `out` must be valid for writes.
enum RaStatus ra_lyndon_new(size_t n, struct RaAlgebra **out);

// Parses an algebra from its JSON form.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be valid for writes.
enum RaStatus ra_algebra_from_json(const char *json, struct RaAlgebra **out);

// # Safety
// `alg` must be a live handle; `out` must be valid for writes.
enum RaStatus ra_algebra_to_json(const struct RaAlgebra *alg, char **out);

// Releases an algebra. Null is ignored.
//
// # Safety
// `alg` must come from this library and not have been freed.
void ra_algebra_free(struct RaAlgebra *alg);

// Number of atoms, or 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
size_t ra_algebra_atom_count(const struct RaAlgebra *alg);

// Bitmask of the identity atom, or 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
uint64_t ra_algebra_identity(const struct RaAlgebra *alg);

// # Safety
// `alg` must be a live handle; `out` must be valid for writes.
enum RaStatus ra_algebra_compose(const struct RaAlgebra *alg,
                                 uint64_t x,
                                 uint64_t y,
                                 uint64_t *out);

// # Safety
// `alg` must be a live handle; `out` must be valid for writes.
enum RaStatus ra_algebra_converse(const struct RaAlgebra *alg, uint64_t x, uint64_t *out);

// # Safety
// `alg` must be a live handle; `out` must be valid for writes.
enum RaStatus ra_algebra_complement(const struct RaAlgebra *alg, uint64_t x, uint64_t *out);

// Checks the relation algebra axioms. `report_json` may be null; otherwise
// it receives the full report.
//
// # Safety
// `alg` must be a live handle; `all_pass` must be valid for writes;
// `report_json` must be null or valid for writes.
enum RaStatus ra_algebra_check_axioms(const struct RaAlgebra *alg,
                                      bool *all_pass,
                                      char **report_json);

// JSON form of the subalgebra generated by `len` elements at `gens`.
//
// # Safety
// `alg` must be a live handle; `gens` must point to `len` values (or be
// null when `len` is 0); `out` must be valid for writes.
enum RaStatus ra_subalgebra_generate_json(const struct RaAlgebra *alg,
                                          const uint64_t *gens,
                                          size_t len,
                                          char **out);

// Parses an equation such as `"x ; y = y ; x"`.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be valid for writes.
enum RaStatus ra_equation_parse(const char *text, struct RaEquation **out);

// Releases an equation. Null is ignored.
//
// # Safety
// `eq` must come from this library and not have been freed.
void ra_equation_free(struct RaEquation *eq);

// Length (operation symbols plus variable occurrences), or 0 for null.
//
// # Safety
// `eq` must be null or a live handle.
size_t ra_equation_length(const struct RaEquation *eq);

// Number of distinct variables, or 0 for null.
//
// # Safety
// `eq` must be null or a live handle.
size_t ra_equation_num_variables(const struct RaEquation *eq);

// Checks `eq` over every assignment in `alg`. `workers` of 0 means all
// cores. `result_json` may be null; otherwise it receives the result with
// the least falsifying assignment.
//
// # Safety
// Handles must be live; `holds` must be valid for writes; `result_json` must
// be null or valid for writes.
enum RaStatus ra_equation_holds(const struct RaEquation *eq,
                                const struct RaAlgebra *alg,
                                size_t workers,
                                bool *holds,
                                char **result_json);

// Whether the Bruck–Ryser theorem excludes a projective plane of this order.
bool ra_bruck_ryser_rules_out(uint64_t order);

// JSON verdict on the representability of the Lyndon algebra with `n`
// diversity atoms.
//
// # Safety
// `out` must be valid for writes.
enum RaStatus ra_representability_status_json(size_t n, char **out);

// JSON dump of the projective plane of order `q`.
//
// # Safety
// `out` must be valid for writes.
enum RaStatus ra_plane_json(uint32_t q, char **out);

// Largest `k` with `2^(k+1) <= 2·3^(2n+1)`.
uint64_t ra_bounds_k_max(uint32_t n);

// Shortest length of an equation separating the `n`-th witness algebra.
uint64_t ra_bounds_min_len(uint32_t n);

// `2·log2(3)·(2n + 1) - 2`.
double ra_bounds_f(double n);

// The length lower bound for algebras with `2^log2m` elements.
//
// # Safety
// `out` must be valid for writes.
enum RaStatus ra_bounds_beta_lower(double log2m, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RELALG_H */
