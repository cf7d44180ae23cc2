/* C interface to the bichrom bivariate chromatic polynomial library. */

#ifndef BICHROM_H
#define BICHROM_H

/* Generated by cbindgen from crates/bichrom-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum BichromStatus {
  BICHROM_STATUS_OK = 0,
  /**
   * A NULL pointer, a malformed string, or an argument the library
   * rejects.
   */
  BICHROM_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The graph text did not parse; the diagnostic names the line.
   */
  BICHROM_STATUS_PARSE_ERROR = 2,
  /**
   * The graph or poset is larger than the requested bound.
   */
  BICHROM_STATUS_BOUND_EXCEEDED = 3,
  /**
   * Arguments outside a function's numeric domain (e.g. threshold above
   * palette).
   */
  BICHROM_STATUS_DOMAIN_ERROR = 4,
  /**
   * A caught panic; indicates a library bug.
   */
  BICHROM_STATUS_INTERNAL = 5,
} BichromStatus;

/**
 * Which algorithm computes the polynomial.
 */
typedef enum BichromMethod {
  /**
   * Order-polynomial sum over flats and acyclic orientations.
   */
  BICHROM_METHOD_DECOMPOSITION = 0,
  /**
   * Exact interpolation through counted grid points.
   */
  BICHROM_METHOD_INTERPOLATE = 1,
  /**
   * Deletion–contraction on undirected edges.
   */
  BICHROM_METHOD_DELCONTR = 2,
} BichromMethod;

/**
 * Rendering target for [`bichrom_poly_render`].
 */
typedef enum BichromFormat {
  BICHROM_FORMAT_PLAIN = 0,
  BICHROM_FORMAT_LATEX = 1,
  BICHROM_FORMAT_JSON = 2,
} BichromFormat;

/**
 * Identity checked by [`bichrom_verify`].
 */
typedef enum BichromIdentity {
  /**
   * Edge deletion–contraction–correction, for every edge whose pair
   * carries no arc.
   */
  BICHROM_IDENTITY_DELCONTR_EDGE = 0,
  /**
   * Arc deletion–contraction–correction, for every arc whose pair carries
   * only that arc.
   */
  BICHROM_IDENTITY_DELCONTR_ARC = 1,
  /**
   * The three compute methods agree exactly.
   */
  BICHROM_IDENTITY_DECOMPOSITION = 2,
  /**
   * Chromatic reciprocity on the integer grid plus interpolation.
   */
  BICHROM_IDENTITY_RECIPROCITY = 3,
  /**
   * Order-polynomial reciprocity for every induced bicolored poset.
   */
  BICHROM_IDENTITY_BOP_RECIPROCITY = 4,
} BichromIdentity;

/**
 * Opaque handle to a parsed mixed graph.
 */
typedef struct BichromGraph BichromGraph;

/**
 * Opaque handle to an exact bivariate polynomial.
 */
typedef struct BichromPoly BichromPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Most recent diagnostic for this thread; empty string when no call has
 * failed yet. Owned by the library — do not free.
 */
const char *bichrom_last_error(void);

/**
 * Release a string allocated by this library. NULL is allowed.
 *
 * # Safety
 * `s` must have been returned by a bichrom function and not freed before.
 */
void bichrom_string_free(char *s);

/**
 * Parse a graph from its text format (`vertex NAME` / `edge A B` /
 * `arc A B` lines). On success, `*out` owns the new handle.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be a valid pointer.
 */
enum BichromStatus bichrom_graph_parse(const char *text, struct BichromGraph **out);

/**
 * Release a graph handle. NULL is allowed.
 *
 * # Safety
 * `g` must come from this library and not be freed twice.
 */
void bichrom_graph_free(struct BichromGraph *g);

/**
 * Number of vertices; 0 for a NULL handle.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
size_t bichrom_graph_vertex_count(const struct BichromGraph *g);

/**
 * Number of undirected edges; 0 for a NULL handle.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
size_t bichrom_graph_edge_count(const struct BichromGraph *g);

/**
 * Number of arcs; 0 for a NULL handle.
 *
 * # Safety
 * `g` must be a live handle or NULL.
 */
size_t bichrom_graph_arc_count(const struct BichromGraph *g);

/**
 * Serialize the graph back to its text format (re-parses to an equal
 * graph). The caller frees `*out` with [`bichrom_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid.
 */
enum BichromStatus bichrom_graph_to_text(const struct BichromGraph *g, char **out);

/**
 * Compute the bivariate chromatic polynomial by the chosen method.
 * `bound` caps the vertex count (pass 6 for the library default). On
 * success, `*out` owns the new polynomial handle.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid.
 */
enum BichromStatus bichrom_chi(const struct BichromGraph *g,
                               enum BichromMethod method,
                               size_t bound,
                               struct BichromPoly **out);

/**
 * Count proper colorings directly (no polynomial): palette `{1..x}`,
 * threshold `y`. Requires `y <= x`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid.
 */
enum BichromStatus bichrom_count_colorings(const struct BichromGraph *g,
                                           uint64_t x,
                                           uint64_t y,
                                           uint64_t *out);

/**
 * Release a polynomial handle. NULL is allowed.
 *
 * # Safety
 * `p` must come from this library and not be freed twice.
 */
void bichrom_poly_free(struct BichromPoly *p);

/**
 * Render a polynomial as plain text, LaTeX, or canonical JSON. The caller
 * frees `*out` with [`bichrom_string_free`].
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid.
 */
enum BichromStatus bichrom_poly_render(const struct BichromPoly *p,
                                       enum BichromFormat format,
                                       char **out);

/**
 * Rebuild a polynomial from the JSON produced by
 * [`bichrom_poly_render`] with `BICHROM_FORMAT_JSON`.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be valid.
 */
enum BichromStatus bichrom_poly_parse_json(const char *text, struct BichromPoly **out);

/**
 * Evaluate exactly at integer `(x, y)`; writes the rational value in
 * lowest terms (`"7"`, `"-5/2"`). The caller frees `*out` with
 * [`bichrom_string_free`].
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid.
 */
enum BichromStatus bichrom_poly_eval(const struct BichromPoly *p, int64_t x, int64_t y, char **out);

/**
 * Exact equality of two polynomials.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid.
 */
enum BichromStatus bichrom_poly_equal(const struct BichromPoly *a,
                                      const struct BichromPoly *b,
                                      bool *out);

/**
 * Machine-check one identity on the graph. `xmax` is the reciprocity grid
 * limit (ignored by the other identities; 4 is a sensible default).
 * `*out_holds` reports whether the identity held; the status only reports
 * whether the check could run.
 *
 * # Safety
 * `g` must be a live handle; `out_holds` must be valid.
 */
enum BichromStatus bichrom_verify(const struct BichromGraph *g,
                                  enum BichromIdentity identity,
                                  uint64_t xmax,
                                  size_t bound,
                                  bool *out_holds);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BICHROM_H */
