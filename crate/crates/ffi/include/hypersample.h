#ifndef HYPERSAMPLE_H
#define HYPERSAMPLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum HsStatus {
  HS_STATUS_OK = 0,
  HS_STATUS_NULL_POINTER = 1,
  HS_STATUS_INVALID_INPUT = 2,
  // The rejection cap was reached without an H-simple draw.
  HS_STATUS_FAIL = 3,
  // The configuration model gave up.
  HS_STATUS_EXHAUSTED = 4,
  // Enumeration exceeded its limit.
  HS_STATUS_TOO_LARGE = 5,
  // No bipartite graph has the requested degrees.
  HS_STATUS_EMPTY = 6,
  HS_STATUS_INVALID_REGION = 7,
  HS_STATUS_BUFFER_TOO_SMALL = 8,
  HS_STATUS_PANIC = 9,
} HsStatus;

// A simple k-uniform hypergraph.
typedef struct HsHypergraph HsHypergraph;

// Degree sequence and edge size.
typedef struct HsInstance HsInstance;

// A bipartite sampler bound to one instance.
typedef struct HsSampler HsSampler;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *hs_last_error(void);

// Creates an instance from `n` degrees and edge size `k`.
//
// # Safety
// `degrees` must point to `n` readable values and `out` must be writable.
enum HsStatus hs_instance_new(const size_t *degrees, size_t n, size_t k, struct HsInstance **out);

// # Safety
// `inst` must come from [`hs_instance_new`] and not be freed twice.
void hs_instance_free(struct HsInstance *inst);

// Number of hyperedges `m = sum(d) / k`, or 0 for NULL.
//
// # Safety
// `inst` must be NULL or a live instance.
size_t hs_instance_edge_count(const struct HsInstance *inst);

// Configuration-model sampler (exactly uniform).
//
// # Safety
// `inst` must be a live instance and `out` writable.
enum HsStatus hs_sampler_config_new(const struct HsInstance *inst, struct HsSampler **out);

// Switch chain run for `steps` steps per draw from a fixed start graph.
//
// # Safety
// `inst` must be a live instance and `out` writable.
enum HsStatus hs_sampler_switch_new(const struct HsInstance *inst,
                                    uint64_t steps,
                                    struct HsSampler **out);

// Exactly uniform sampler backed by full enumeration; fails with
// `HS_STATUS_TOO_LARGE` beyond `limit` search nodes.
//
// # Safety
// `inst` must be a live instance and `out` writable.
enum HsStatus hs_sampler_oracle_new(const struct HsInstance *inst,
                                    uint64_t limit,
                                    struct HsSampler **out);

// # Safety
// `sampler` must come from one of the `hs_sampler_*_new` functions.
void hs_sampler_free(struct HsSampler *sampler);

// Draws one hypergraph by rejection. The random stream is fixed by
// `(seed, stream)`. `cap == 0` means no cap. `iterations` may be NULL.
//
// # Safety
// `sampler` must be live; `out` must be writable; `iterations` NULL or
// writable.
enum HsStatus hs_sample(const struct HsSampler *sampler,
                        uint64_t seed,
                        uint64_t stream,
                        uint64_t cap,
                        struct HsHypergraph **out,
                        uint64_t *iterations);

// # Safety
// `h` must come from [`hs_sample`].
void hs_hypergraph_free(struct HsHypergraph *h);

// # Safety
// `h` must be NULL or live.
size_t hs_hypergraph_edge_count(const struct HsHypergraph *h);

// # Safety
// `h` must be NULL or live.
size_t hs_hypergraph_k(const struct HsHypergraph *h);

// Writes the canonical edge list, `k` 1-based ids per edge, into `buf`,
// which must hold `edge_count * k` values.
//
// # Safety
// `h` must be live and `buf` must point to `len` writable values.
enum HsStatus hs_hypergraph_copy_edges(const struct HsHypergraph *h, size_t *buf, size_t len);

// Bounds report as a JSON string; release it with [`hs_string_free`].
// Pass NaN for `c0` or `eps` to leave them unset.
//
// # Safety
// `inst` must be live and `out` writable.
enum HsStatus hs_bounds_json(const struct HsInstance *inst, double c0, double eps, char **out);

// # Safety
// `s` must come from this library and not be freed twice.
void hs_string_free(char *s);

// Exact counts of bipartite graphs, H-simple bipartite graphs and
// hypergraphs. Any output pointer may be NULL.
//
// # Safety
// `inst` must be live; each output NULL or writable.
enum HsStatus hs_enumerate_counts(const struct HsInstance *inst,
                                  uint64_t limit,
                                  uint64_t *count_b,
                                  uint64_t *count_b_star,
                                  uint64_t *count_h);

// Library version as a static string.
const char *hs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERSAMPLE_H */
