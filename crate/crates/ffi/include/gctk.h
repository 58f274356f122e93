#ifndef GCTK_H
#define GCTK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GctkStatus {
  GCTK_STATUS_OK = 0,
  GCTK_STATUS_NULL_POINTER = 1,
  GCTK_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed text, unknown or duplicate vertices, bad point data.
   */
  GCTK_STATUS_INVALID_INPUT = 3,
  /**
   * Input is well formed but outside the operation's domain.
   */
  GCTK_STATUS_DOMAIN = 4,
  GCTK_STATUS_SIZE_LIMIT = 5,
  /**
   * An internal consistency check failed.
   */
  GCTK_STATUS_VERIFICATION = 6,
  GCTK_STATUS_BUFFER_TOO_SMALL = 7,
  GCTK_STATUS_PANIC = 8,
} GctkStatus;

typedef struct GctkComplex GctkComplex;

typedef struct GctkDigraph GctkDigraph;

typedef struct GctkGraph GctkGraph;

typedef struct GctkPointSet GctkPointSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *gctk_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void gctk_string_free(char *s);

/**
 * Caps every face enumeration at `cap` items (process wide).
 */
enum GctkStatus gctk_set_size_cap(size_t cap);

/**
 * Parses an edge list (`x y` per line, `vertex v` for isolated vertices).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum GctkStatus gctk_digraph_parse(const char *text, struct GctkDigraph **out);

/**
 * # Safety
 * `g` must come from `gctk_digraph_parse` or be null.
 */
void gctk_digraph_free(struct GctkDigraph *g);

/**
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum GctkStatus gctk_graph_parse(const char *text, struct GctkGraph **out);

/**
 * Path-power graph on 1..n: i ~ j when 0 < |i − j| < k.
 *
 * # Safety
 * `out` must be writable.
 */
enum GctkStatus gctk_graph_l(size_t n, size_t k, struct GctkGraph **out);

/**
 * Cycle-power graph on 1..n.
 *
 * # Safety
 * `out` must be writable.
 */
enum GctkStatus gctk_graph_c(size_t n, size_t k, struct GctkGraph **out);

/**
 * # Safety
 * `g` must come from a `gctk_graph_*` constructor or be null.
 */
void gctk_graph_free(struct GctkGraph *g);

/**
 * Reads `{"metric": "line"|"euclidean"|"grid", "points": [...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum GctkStatus gctk_point_set_from_json(const char *json, struct GctkPointSet **out);

/**
 * # Safety
 * `p` must come from `gctk_point_set_from_json` or be null.
 */
void gctk_point_set_free(struct GctkPointSet *p);

/**
 * Complex of directed forests of `g`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GctkStatus gctk_dt(const struct GctkDigraph *g, struct GctkComplex **out);

/**
 * Rooted variant; `roots` is a comma-separated vertex list.
 *
 * # Safety
 * `g` must be a live handle, `roots` a NUL-terminated string, `out` writable.
 */
enum GctkStatus gctk_dt_rooted(const struct GctkDigraph *g,
                               const char *roots,
                               struct GctkComplex **out);

/**
 * Reduced Euler characteristic of the forest complex of a DAG from in-degrees.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GctkStatus gctk_dt_euler(const struct GctkDigraph *g, int64_t *out);

/**
 * Independence complex of `g`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GctkStatus gctk_ind(const struct GctkGraph *g, struct GctkComplex **out);

/**
 * Anti-Rips complex at threshold `r` (decimal or fraction text).
 *
 * # Safety
 * `p` must be a live handle, `r` a NUL-terminated string, `out` writable.
 */
enum GctkStatus gctk_ar(const struct GctkPointSet *p, const char *r, struct GctkComplex **out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum GctkStatus gctk_complex_vertex_count(const struct GctkComplex *c, size_t *out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum GctkStatus gctk_complex_reduced_euler(const struct GctkComplex *c, int64_t *out);

/**
 * Reduced ℤ₂ Betti numbers without trailing zeros. `*len` receives the count
 * even when `cap` is too small; `*is_empty` is set for the complex with no
 * vertices, which reports length 0.
 *
 * # Safety
 * `c` must be a live handle; `buf` must hold `cap` values (may be null when
 * `cap` is 0); `len` and `is_empty` must be writable.
 */
enum GctkStatus gctk_complex_betti(const struct GctkComplex *c,
                                   uint64_t *buf,
                                   size_t cap,
                                   size_t *len,
                                   bool *is_empty);

/**
 * Largest k with vanishing reduced homology through degree k (−1 when
 * disconnected).
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum GctkStatus gctk_complex_connectivity(const struct GctkComplex *c, int64_t *out);

/**
 * `{"vertices": [...], "maximal_faces": [[...], ...]}`; free with `gctk_string_free`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum GctkStatus gctk_complex_to_json(const struct GctkComplex *c, char **out);

/**
 * # Safety
 * `c` must come from this library or be null.
 */
void gctk_complex_free(struct GctkComplex *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GCTK_H */
