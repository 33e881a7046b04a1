#ifndef FFPC_H
#define FFPC_H

/* Generated by cbindgen from ffpc-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every entry point.
typedef enum FfpcStatus {
  // Success; for verification calls, all verdicts passed.
  FFPC_STATUS_OK = 0,
  // The call completed but at least one verdict failed.
  FFPC_STATUS_VERIFICATION_FAILED = 1,
  // Invalid argument, parse error, or refused request.
  FFPC_STATUS_INVALID_ARGUMENT = 2,
  // The requested computation exceeds the enumeration budget.
  FFPC_STATUS_BUDGET_EXCEEDED = 3,
  // Internal error (a panic was caught at the boundary).
  FFPC_STATUS_INTERNAL_ERROR = 4,
} FfpcStatus;

// Opaque handle to a finite field descriptor.
typedef struct FfpcField FfpcField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message for this thread; valid until the next failing
// call on the same thread. Never null.
const char *ffpc_last_error_message(void);

// Free a string returned by any ffpc_* call.
//
// # Safety
// `s` must be a pointer previously returned by this library (or null).
void ffpc_string_free(char *s);

// Construct F_{p^r}. `modulus_encoding` selects the modulus by its
// integer encoding (sum of c_i p^i including the leading term); pass 0
// for the deterministic default (lexicographically smallest monic
// irreducible). On success `*out` owns the handle.
//
// # Safety
// `out` must be a valid pointer.
enum FfpcStatus ffpc_field_new(uint64_t p,
                               uint32_t r,
                               uint64_t modulus_encoding,
                               struct FfpcField **out);

// Release a field handle.
//
// # Safety
// `field` must come from ffpc_field_new (or be null).
void ffpc_field_free(struct FfpcField *field);

// Canonical field spec string "p^r:m".
//
// # Safety
// `field` must be a live handle; `out` must be valid.
enum FfpcStatus ffpc_field_spec(const struct FfpcField *field, char **out);

// Exact psi(n, t): the prime-power-weighted count over the class of t.
// `t_csv` is a comma-separated tuple ("" for the empty tuple), `method`
// is "formula", "brute" or "both", `budget` bounds brute enumeration
// (0 = default). The decimal result string must be freed with
// ffpc_string_free.
//
// # Safety
// `field` must be a live handle; pointer arguments must be valid.
enum FfpcStatus ffpc_psi(const struct FfpcField *field,
                         uint32_t n,
                         const char *t_csv,
                         const char *method,
                         uint64_t budget,
                         char **out_decimal);

// Exact pi(n, t): the count of irreducibles in the class of t.
// Arguments as for ffpc_psi.
//
// # Safety
// `field` must be a live handle; pointer arguments must be valid.
enum FfpcStatus ffpc_pi(const struct FfpcField *field,
                        uint32_t n,
                        const char *t_csv,
                        const char *method,
                        uint64_t budget,
                        char **out_decimal);

// Run a verification suite (period, symmetry, sym2, roots24, roots60,
// fomenko, cubicform, legendre, zeta) with its default parameters and
// return the verdict report as JSON. Returns Ok when every verdict
// passed, VerificationFailed when the report contains a failure.
//
// # Safety
// `field` must be a live handle; pointer arguments must be valid.
enum FfpcStatus ffpc_verify_json(const struct FfpcField *field,
                                 const char *suite,
                                 uint32_t n_max,
                                 uint64_t seed,
                                 char **out_json);

// Construct the non-periodicity witness character for (p, level) and
// return its report as JSON. `sweep_max` bounds the even-order sweep
// (0 = default 240).
//
// # Safety
// Pointer arguments must be valid.
enum FfpcStatus ffpc_witness_json(uint64_t p, uint32_t level, uint64_t sweep_max, char **out_json);

// Exact L-function report (JSON) for the character with the given
// enumeration index at the given level.
//
// # Safety
// `field` must be a live handle; pointer arguments must be valid.
enum FfpcStatus ffpc_lfunction_json(const struct FfpcField *field,
                                    uint32_t level,
                                    uint64_t index,
                                    uint64_t sweep_max,
                                    char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FFPC_H */
