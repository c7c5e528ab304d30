#ifndef K3WEYL_H
#define K3WEYL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a call. The first four values match the CLI exit codes.
typedef enum K3Status {
  K3_STATUS_OK = 0,
  // A mathematical check failed.
  K3_STATUS_MATH = 1,
  // Malformed input.
  K3_STATUS_INPUT = 2,
  // Refused by the cost policy or missing data.
  K3_STATUS_BUDGET = 3,
  // A required pointer argument was null.
  K3_STATUS_NULL_POINTER = 4,
  // A value does not fit the requested C type.
  K3_STATUS_OVERFLOW = 5,
  // Internal panic.
  K3_STATUS_PANIC = 6,
} K3Status;

// Opaque integral lattice.
typedef struct K3Lattice K3Lattice;

// Opaque surface description.
typedef struct K3Surface K3Surface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer is
// valid until the next call into this library from the same thread.
const char *k3_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void k3_string_free(char *s);

// Builds a lattice from a row-major `rank × rank` Gram matrix.
//
// # Safety
// `gram` must point to `rank * rank` values and `out` must be writable.
enum K3Status k3_lattice_new(const int64_t *gram, size_t rank, struct K3Lattice **out);

// # Safety
// `lat` must come from [`k3_lattice_new`] and not have been freed. Null is ignored.
void k3_lattice_free(struct K3Lattice *lat);

// # Safety
// `lat` must be a live handle.
size_t k3_lattice_rank(const struct K3Lattice *lat);

// # Safety
// `lat` must be a live handle and `out` writable.
enum K3Status k3_lattice_discriminant(const struct K3Lattice *lat, int64_t *out);

// # Safety
// `lat` must be a live handle and `out` writable.
enum K3Status k3_lattice_is_even(const struct K3Lattice *lat, bool *out);

// Runs the non-normality certificate and writes its JSON report. A null
// `lattice_json` uses the bundled data.
//
// # Safety
// `lattice_json` must be null or a nul-terminated string; `out_json` writable.
enum K3Status k3_certify_json(const char *lattice_json, char **out_json);

// The bundled example surface.
//
// # Safety
// `out` must be writable.
enum K3Status k3_surface_bundled(struct K3Surface **out);

// Parses a surface spec from JSON.
//
// # Safety
// `json` must be a nul-terminated string and `out` writable.
enum K3Status k3_surface_from_json(const char *json, struct K3Surface **out);

// # Safety
// `s` must come from this library and not have been freed. Null is ignored.
void k3_surface_free(struct K3Surface *s);

// Number of points of the surface over `F_{p^n}`. `threads = 0` uses all
// available cores; `long_run` raises the cost threshold.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum K3Status k3_count_points(const struct K3Surface *s,
                              uint32_t p,
                              uint32_t n,
                              uint32_t threads,
                              bool long_run,
                              uint64_t *out);

// Runs the full Picard number argument and writes the JSON report. The
// return value reflects the first failing stage; the report is written
// whenever the status is not `NullPointer` or `Panic`.
//
// # Safety
// `s` must be a live handle and `out_json` writable.
enum K3Status k3_verify_json(const struct K3Surface *s,
                             uint32_t threads,
                             bool use_reference_counts,
                             char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* K3WEYL_H */
