#ifndef POLYMUT_H
#define POLYMUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define PM_OK 0

#define PM_ERR_NULL -1

#define PM_ERR_UTF8 -2

#define PM_ERR_PARSE -3

#define PM_ERR_INVALID -4

#define PM_ERR_NOT_WELL_DEFINED -5

#define PM_ERR_NON_CONVEX -6

#define PM_ERR_NOT_INTERIOR -7

#define PM_ERR_OTHER -8

#define PM_ERR_PANIC -9

// A mutation datum `(w, F, f)`.
typedef struct PmDatum PmDatum;

// An exact rational polytope.
typedef struct PmPolytope PmPolytope;

// A seed `(J, J_uf, ε)`.
typedef struct PmSeed PmSeed;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *pm_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void pm_string_free(char *s);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
int32_t pm_polytope_from_json(const char *json, struct PmPolytope **out);

// Generates a polytope. `kind` is one of `gt-a`, `gt-c`, `fflv-a`,
// `fflv-c`, `sl4-nobody`, `nz-sp4`; `lambda` is like `"2,2,2"`. `n` is
// ignored by the last two kinds.
//
// # Safety
// `kind` and `lambda` must be NUL-terminated strings; `out` must be writable.
int32_t pm_polytope_generate(const char *kind,
                             size_t n,
                             const char *lambda,
                             struct PmPolytope **out);

// # Safety
// `p` must be a live handle; `out` must be writable.
int32_t pm_polytope_to_json(const struct PmPolytope *p, char **out);

// # Safety
// `p` must be NULL or a handle from this library, not yet freed.
void pm_polytope_free(struct PmPolytope *p);

// Ambient dimension, or 0 for a NULL handle.
//
// # Safety
// `p` must be NULL or a live handle.
size_t pm_polytope_dim(const struct PmPolytope *p);

// # Safety
// `p` must be NULL or a live handle.
size_t pm_polytope_vertex_count(const struct PmPolytope *p);

// Number of lattice points of `k·P`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
int32_t pm_polytope_lattice_points(const struct PmPolytope *p, uint32_t k, uint64_t *out);

// Number of interior lattice points.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
int32_t pm_polytope_interior_points(const struct PmPolytope *p, uint64_t *out);

// # Safety
// `p` must be a live handle; `out` must be writable.
int32_t pm_polytope_polar(const struct PmPolytope *p, struct PmPolytope **out);

// Polar dual of `P − a` for the lattice point `a[0..len]`.
//
// # Safety
// `p` must be a live handle, `a` must point to `len` integers and `out`
// must be writable.
int32_t pm_polytope_dual_at(const struct PmPolytope *p,
                            const int64_t *a,
                            size_t len,
                            struct PmPolytope **out);

// Whether `P` and `Q` are the same set. Writes 1 or 0.
//
// # Safety
// Both handles must be live; `out` must be writable.
int32_t pm_polytope_equal(const struct PmPolytope *p, const struct PmPolytope *q, int32_t *out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
int32_t pm_datum_from_json(const char *json, struct PmDatum **out);

// # Safety
// `d` must be NULL or a handle from this library, not yet freed.
void pm_datum_free(struct PmDatum *d);

// `mut_w(P, F)` on the N side.
//
// # Safety
// Both handles must be live; `out` must be writable.
int32_t pm_mutate_n(const struct PmDatum *d, const struct PmPolytope *p, struct PmPolytope **out);

// `f(φ_{w,F}(Q))` on the M side.
//
// # Safety
// Both handles must be live; `out` must be writable.
int32_t pm_mutate_m(const struct PmDatum *d, const struct PmPolytope *q, struct PmPolytope **out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
int32_t pm_seed_from_json(const char *json, struct PmSeed **out);

// # Safety
// `s` must be a live handle; `out` must be writable.
int32_t pm_seed_to_json(const struct PmSeed *s, char **out);

// # Safety
// `s` must be NULL or a handle from this library, not yet freed.
void pm_seed_free(struct PmSeed *s);

// Mutates the seed at label `k` and maps `payload` through `μ_k^T`.
// Either out-pointer may be NULL when that result is not wanted.
//
// # Safety
// Both handles must be live; non-NULL out-pointers must be writable.
int32_t pm_seed_mutate(const struct PmSeed *s,
                       size_t k,
                       const struct PmPolytope *payload,
                       struct PmSeed **out_seed,
                       struct PmPolytope **out_payload);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYMUT_H */
