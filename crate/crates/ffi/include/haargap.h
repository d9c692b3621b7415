#ifndef HAARGAP_H
#define HAARGAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define HG_LATTICE_GENERIC 0

#define HG_LATTICE_INNER 1

#define HG_BOUND_HAAR_FRACTION 0

#define HG_BOUND_HALF_MAXIMAL 1

// Status codes. The nonzero values shared with the command-line tool
// (2, 3, 4) have the same meaning there.
typedef enum HgStatus {
  HG_STATUS_OK = 0,
  HG_STATUS_INVALID_INPUT = 2,
  HG_STATUS_CAPACITY = 3,
  HG_STATUS_VALIDATION = 4,
  HG_STATUS_NULL_POINTER = 5,
  HG_STATUS_PANIC = 6,
} HgStatus;

// Opaque solved Haar-weight linear program.
typedef struct HgHaarSolution HgHaarSolution;

// Opaque root system of type `A_{n-1}`.
typedef struct HgRootSystem HgRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *hg_version(void);

// Message describing the most recent failure on this thread ("" if none).
// Owned by the library.
const char *hg_last_error(void);

// Frees a string returned through an out-pointer. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void hg_string_free(char *s);

// Creates the root system of `SL_n` (type `A_{n-1}`), `n >= 2`.
//
// # Safety
// `out` must be valid for writes.
enum HgStatus hg_root_system_new(size_t n, struct HgRootSystem **out);

// # Safety
// `rs` must be null or a handle from [`hg_root_system_new`], freed once.
void hg_root_system_free(struct HgRootSystem *rs);

// Number of roots (`n(n-1)`), or 0 for a null handle.
//
// # Safety
// `rs` must be null or a live handle.
size_t hg_root_system_num_roots(const struct HgRootSystem *rs);

// Half-maximal-exponent entropy lower bound at `direction`, a
// comma-separated trace-zero list of rationals such as `"3,-1,-1,-1"`.
// Writes a newly allocated `"p/q"` string to `out`.
//
// # Safety
// `rs` must be a live handle, `direction` a NUL-terminated string and `out`
// valid for writes.
enum HgStatus hg_entropy_lower_bound(const struct HgRootSystem *rs,
                                     const char *direction,
                                     char **out);

// Entropy of Haar measure at `direction`; same conventions as
// [`hg_entropy_lower_bound`].
//
// # Safety
// As for [`hg_entropy_lower_bound`].
enum HgStatus hg_haar_entropy(const struct HgRootSystem *rs, const char *direction, char **out);

// Solves the Haar-weight program for `SL_n` on the Weyl orbit of
// `diag(n-1, -1, ..., -1)`. `lattice` is one of `HG_LATTICE_*`,
// `bound_mode` one of `HG_BOUND_*`, `beta` a rational string in `[0, 1]`.
//
// # Safety
// `beta` must be a NUL-terminated string and `out` valid for writes.
enum HgStatus hg_haar_lp_solve(size_t n,
                               uint32_t lattice,
                               const char *beta,
                               uint32_t bound_mode,
                               struct HgHaarSolution **out);

// # Safety
// `s` must be null or a handle from [`hg_haar_lp_solve`], freed once.
void hg_haar_solution_free(struct HgHaarSolution *s);

// Minimal Haar weight as a `"p/q"` string owned by the handle.
//
// # Safety
// `s` must be null or a live handle.
const char *hg_haar_solution_min_weight(const struct HgHaarSolution *s);

// Number of candidate supports (LP variables), or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
size_t hg_haar_solution_num_supports(const struct HgHaarSolution *s);

// Label and weight of support `index` at the returned optimal vertex.
// Both strings are owned by the handle. Optimal vertices need not be
// unique; this is the one the solver found.
//
// # Safety
// `s` must be a live handle; `label` and `weight` valid for writes.
enum HgStatus hg_haar_solution_support(const struct HgHaarSolution *s,
                                       size_t index,
                                       const char **label,
                                       const char **weight);

// Largest singular value of a `rows × cols` complex matrix given as
// row-major real and imaginary parts (`rows * cols` doubles each).
//
// # Safety
// `re` and `im` must point to `rows * cols` readable doubles (they may be
// null when the matrix is empty); `out` must be valid for writes.
enum HgStatus hg_operator_norm(const double *re,
                               const double *im,
                               size_t rows,
                               size_t cols,
                               double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HAARGAP_H */
