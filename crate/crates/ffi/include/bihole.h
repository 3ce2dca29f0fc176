#ifndef BIHOLE_H
#define BIHOLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define BIHOLE_FFI_ABI_VERSION 1

// Status codes; the nonzero values shared with the CLI use the same numbers
// as its exit codes.
typedef enum BiholeStatus {
  BIHOLE_STATUS_OK = 0,
  BIHOLE_STATUS_INVALID_ARGUMENT = 1,
  BIHOLE_STATUS_PARSE_ERROR = 2,
  BIHOLE_STATUS_UNBALANCED = 3,
  BIHOLE_STATUS_VERIFY_FAILED = 4,
  BIHOLE_STATUS_TOO_LARGE = 5,
  BIHOLE_STATUS_NULL_POINTER = 6,
  BIHOLE_STATUS_BUFFER_TOO_SMALL = 7,
  BIHOLE_STATUS_PANIC = 8,
} BiholeStatus;

typedef enum BiholeModel {
  BIHOLE_MODEL_GNP = 0,
  BIHOLE_MODEL_COMPLETE = 1,
  BIHOLE_MODEL_EDGELESS = 2,
  BIHOLE_MODEL_MATCHING = 3,
  BIHOLE_MODEL_CYCLE = 4,
  BIHOLE_MODEL_CROWN = 5,
} BiholeModel;

typedef enum BiholeSide {
  BIHOLE_SIDE_LEFT = 0,
  BIHOLE_SIDE_RIGHT = 1,
} BiholeSide;

// Opaque graph handle.
typedef struct BiholeGraph BiholeGraph;

// Opaque witness handle: balanced vertex sets in the input graph's labels
// plus an elimination order (left vertices encoded as `i`, right as `n + i`
// in [`bihole_witness_copy_order`]).
typedef struct BiholeWitness BiholeWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Owned by the
// library; valid until the next failing call on the same thread.
const char *bihole_last_error_message(void);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void bihole_string_free(char *s);

// Builds a graph from `edge_count` pairs stored flat in `edges`
// (`edges[2k]` left, `edges[2k+1]` right). Duplicates collapse.
//
// # Safety
// `edges` must point to `2 * edge_count` readable values (may be NULL when
// `edge_count` is 0); `out` must be writable.
enum BiholeStatus bihole_graph_new(size_t left_count,
                                   size_t right_count,
                                   const size_t *edges,
                                   size_t edge_count,
                                   struct BiholeGraph **out);

// Parses the edge-list text format.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum BiholeStatus bihole_graph_parse(const char *text, struct BiholeGraph **out);

// Balanced `n x n` graph; `p` is used only by `BIHOLE_MODEL_GNP`.
//
// # Safety
// `out` must be writable.
enum BiholeStatus bihole_graph_generate(enum BiholeModel model,
                                        size_t n,
                                        double p,
                                        uint64_t seed,
                                        struct BiholeGraph **out);

// # Safety
// `g` must be NULL or a handle from this library that has not been freed.
void bihole_graph_free(struct BiholeGraph *g);

// # Safety
// `g` must be NULL or a live graph handle. Returns 0 for NULL.
size_t bihole_graph_left_count(const struct BiholeGraph *g);

// # Safety
// `g` must be NULL or a live graph handle. Returns 0 for NULL.
size_t bihole_graph_right_count(const struct BiholeGraph *g);

// # Safety
// `g` must be NULL or a live graph handle. Returns 0 for NULL.
size_t bihole_graph_edge_count(const struct BiholeGraph *g);

// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum BiholeStatus bihole_graph_degree(const struct BiholeGraph *g,
                                      enum BiholeSide side,
                                      size_t index,
                                      size_t *out);

// Canonical edge-list text; free with [`bihole_string_free`].
//
// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum BiholeStatus bihole_graph_to_edge_list(const struct BiholeGraph *g, char **out);

// `⌊ Σ_v min(1, (d+1)/(deg(v)+1)) / 2 ⌋` for a balanced graph.
//
// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum BiholeStatus bihole_floor_bound(const struct BiholeGraph *g, int64_t d, size_t *out);

// Full bound report as JSON (rationals as `{"num","den","approx"}`), with
// the logarithmic reference value at ε = 1/2. Free with [`bihole_string_free`].
//
// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum BiholeStatus bihole_bound_report_json(const struct BiholeGraph *g, int64_t d, char **out);

// Extracts a bihole (`d = 0`) or a balanced `d`-degenerate witness.
//
// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum BiholeStatus bihole_extract(const struct BiholeGraph *g,
                                 int64_t d,
                                 struct BiholeWitness **out);

// # Safety
// `w` must be NULL or a witness handle from this library that has not been freed.
void bihole_witness_free(struct BiholeWitness *w);

// Vertices per side; 0 for NULL.
//
// # Safety
// `w` must be NULL or a live witness handle.
size_t bihole_witness_size(const struct BiholeWitness *w);

// Copies the left set (ascending) into `buf`, which must hold `size` entries.
//
// # Safety
// `w` must be a live witness handle; `buf` must have room for `len` values.
enum BiholeStatus bihole_witness_copy_left(const struct BiholeWitness *w, size_t *buf, size_t len);

// Copies the right set (ascending) into `buf`, which must hold `size` entries.
//
// # Safety
// `w` must be a live witness handle; `buf` must have room for `len` values.
enum BiholeStatus bihole_witness_copy_right(const struct BiholeWitness *w, size_t *buf, size_t len);

// Copies the elimination order (`2 * size` entries). Left vertex `i` is
// written as `i`, right vertex `i` as `n + i` with `n` the graph's side size.
//
// # Safety
// `g` and `w` must be live handles, `w` extracted from `g`; `buf` must have
// room for `len` values.
enum BiholeStatus bihole_witness_copy_order(const struct BiholeGraph *g,
                                            const struct BiholeWitness *w,
                                            size_t *buf,
                                            size_t len);

// Re-checks the witness against `g`: balanced, and its elimination order
// certifies `d`-degeneracy (for the `d` it was extracted with).
//
// # Safety
// `g` and `w` must be live handles; `out` must be writable.
enum BiholeStatus bihole_witness_verify(const struct BiholeGraph *g,
                                        const struct BiholeWitness *w,
                                        bool *out);

// Witness as JSON `{"left","right","size","elimination_order"}`; free with
// [`bihole_string_free`].
//
// # Safety
// `w` must be a live witness handle; `out` must be writable.
enum BiholeStatus bihole_witness_json(const struct BiholeWitness *w, char **out);

// Exact β(G) by enumeration. `max_side = 0` keeps the default limit (22).
//
// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum BiholeStatus bihole_max_bihole_exact(const struct BiholeGraph *g,
                                          size_t max_side,
                                          size_t *out);

// Exact β_d(G) by enumeration. `max_side = 0` keeps the default limit (8).
//
// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum BiholeStatus bihole_max_degenerate_exact(const struct BiholeGraph *g,
                                              int64_t d,
                                              size_t max_side,
                                              size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIHOLE_H */
