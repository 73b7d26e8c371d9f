#ifndef SDSLAB_H
#define SDSLAB_H

/* Generated by cbindgen from sdslab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum SdsStatus {
  SDS_STATUS_OK = 0,
  SDS_STATUS_NULL_ARGUMENT = 1,
  SDS_STATUS_INVALID_ARGUMENT = 2,
  SDS_STATUS_CAPACITY = 3,
  SDS_STATUS_PARSE_ERROR = 4,
  SDS_STATUS_DOMAIN = 5,
  SDS_STATUS_INTERNAL = 6,
} SdsStatus;

/**
 * Opaque graph handle.
 */
typedef struct SdsGraph SdsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; never freed.
 */
const char *sds_version(void);

/**
 * Thread-local message for the most recent failure. Valid until the next
 * failing call on the same thread; never freed by the caller.
 */
const char *sds_last_error(void);

/**
 * Releases a string returned through a `char **` out-parameter.
 */
void sds_string_free(char *s);

/**
 * Builds a graph from a generator spec: `circ:N`, `circ2:N`, `star:N`,
 * `complete:N`, `path:N` or `tree:1-2,2-3`.
 */
enum SdsStatus sds_graph_generate(const char *spec, struct SdsGraph **out);

/**
 * Parses the edge-list text format (lines `i j`, optional `n <count>`
 * header, `#` comments).
 */
enum SdsStatus sds_graph_parse_edge_list(const char *text, struct SdsGraph **out);

/**
 * Releases a graph handle.
 */
void sds_graph_free(struct SdsGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 */
size_t sds_graph_vertex_count(const struct SdsGraph *g);

/**
 * Edge count, or 0 for a null handle.
 */
size_t sds_graph_edge_count(const struct SdsGraph *g);

/**
 * Undirected DOT rendering of the graph.
 */
enum SdsStatus sds_graph_to_dot(const struct SdsGraph *g, char **out);

/**
 * Orientation counts (alpha, alpha_bar, kappa, kappa_bar) with cross-check
 * status, as a JSON report. Fails with `SDS_STATUS_INTERNAL` if any
 * cross-check disagrees.
 */
enum SdsStatus sds_counts_json(const struct SdsGraph *g, char **out);

/**
 * Groups update words by an equivalence on their SDS maps and reports the
 * classes. `rule` uses the rule mini-language (`nor`, `threshold:2`,
 * `eca:150`, ...), `words` one of `transversal`, `all-permutations`,
 * `sampled:c[,L]`; `relation` one of `functional`, `dynamical`, `cycle`.
 */
enum SdsStatus sds_classify_json(const struct SdsGraph *g,
                                 const char *rule,
                                 const char *words,
                                 const char *relation,
                                 uint64_t seed,
                                 char **out);

/**
 * Reachable-limit-set report over a word family.
 */
enum SdsStatus sds_omega_json(const struct SdsGraph *g,
                              const char *rule,
                              const char *words,
                              uint64_t seed,
                              char **out);

/**
 * The periodic-set stability ratio rho with the word-independence verdict.
 * `words` may be null for the default policy (transversal permutations plus
 * 200 sampled complete words).
 */
enum SdsStatus sds_rho_json(const struct SdsGraph *g,
                            const char *rule,
                            const char *words,
                            uint64_t seed,
                            char **out);

/**
 * Permutation-independence scan of all 256 ECA rules over circ(n) for
 * n_min..=n_max, as the CSV table.
 */
enum SdsStatus sds_scan_csv(size_t n_min, size_t n_max, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SDSLAB_H */
