/* sensorplace: social-sensor selection on cascade-annotated graphs.
 *
 * C interface to the core library. All heap objects are returned through
 * opaque handles and released with the matching *_free call. Functions
 * return SSP_OK (0) on success; on failure they return a category code and
 * leave a human-readable message in ssp_last_error() (thread-local).
 *
 * Structured inputs and outputs cross this boundary as JSON strings; strings
 * returned through char** are owned by the caller and released with
 * ssp_string_free.
 */
#ifndef SENSORPLACE_H
#define SENSORPLACE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ssp_graph ssp_graph;
typedef struct ssp_cascades ssp_cascades;

/* Error categories; values match the CLI exit codes. */
typedef enum {
    SSP_OK = 0,
    SSP_ERROR_PARAM = 2,   /* bad arguments or configuration */
    SSP_ERROR_INPUT = 3,   /* unreadable or malformed input data */
    SSP_ERROR_RUNTIME = 4  /* everything else */
} ssp_status;

const char* ssp_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* ssp_last_error(void);

void ssp_string_free(char* s);

/* ---- graph ------------------------------------------------------------ */

/* Loads "src \t dst" edges (and optional "node \t activity" attributes).
 * Lines starting with '#' are ignored. Self-loops are skipped; duplicate
 * edges collapse. */
ssp_status ssp_graph_load(const char* edge_path, const char* attr_path_or_null, int directed,
                          ssp_graph** out);

/* spec_json: {"nodes": n, "exponent": a, "max_degree": m, "seed": s} */
ssp_status ssp_graph_generate(const char* spec_json, ssp_graph** out);

ssp_status ssp_graph_write(const ssp_graph* graph, const char* edge_path, const char* attr_path);

uint64_t ssp_graph_node_count(const ssp_graph* graph);
uint64_t ssp_graph_edge_count(const ssp_graph* graph);

/* New graph whose activity attribute is each node's participation count. */
ssp_status ssp_graph_derive_activity(const ssp_graph* graph, const ssp_cascades* cascades,
                                     ssp_graph** out);

void ssp_graph_free(ssp_graph* graph);

/* ---- cascades ---------------------------------------------------------- */

/* Loads "cascade \t node \t tick" lines. policy: "reject" fails on unknown
 * nodes, "drop" skips them (count reported via dropped_out, may be NULL). */
ssp_status ssp_cascades_load(const char* path, const ssp_graph* graph, const char* policy,
                             ssp_cascades** out, uint64_t* dropped_out);

/* spec_json: {"cascades": n, "seed_rule": "uniform"|"degree", "transmit_prob": p,
 *             "delay_q": q, "horizon": h, "seed": s} */
ssp_status ssp_cascades_generate(const ssp_graph* graph, const char* spec_json,
                                 ssp_cascades** out);

ssp_status ssp_cascades_write(const ssp_cascades* cascades, const ssp_graph* graph,
                              const char* path);

uint64_t ssp_cascades_count(const ssp_cascades* cascades);

void ssp_cascades_free(ssp_cascades* cascades);

/* ---- sample-size math -------------------------------------------------- */

/* Minimum candidate count so a draw hits the top alpha% with confidence p,
 * plus the probability actually achieved at that count. */
ssp_status ssp_min_candidate_size(double p, double alpha, uint32_t* xi, double* achieved);

ssp_status ssp_prob_at_least_one(double alpha, uint64_t draw, double* out);

/* Exact hypergeometric tail P(|draw ∩ top| >= k). */
ssp_status ssp_prob_overlap_at_least(uint64_t population, uint64_t top, uint64_t draw, uint64_t k,
                                     double* out);

ssp_status ssp_cover_ratio_lower_bound(double p, double* out);

/* ---- selection and evaluation ------------------------------------------ */

/* config_json:
 *   {"method": "greedy"|"lazy"|"framework"|"vs"|"rw"|"random"|"fp",
 *    "budget": B, "seed": s,
 *    "bias": "uniform"|"degree"|"activity",      (vs/rw/framework)
 *    "candidates": B',                            (vs/rw)
 *    "xi": n | "p": p, "alpha": a,                (framework round size)
 *    "ncap": n, "memoize": true|false}
 * result_json: ordered sensors (external ids), per-round gains, counters. */
ssp_status ssp_select(const ssp_graph* graph, const ssp_cascades* cascades,
                      const char* config_json, char** result_json);

/* config_json:
 *   {"sensors": [ids] | "method": {...as ssp_select...},
 *    "bucket_width": w,
 *    "split": {"window_width": w, "train_begin": i, "train_end": j, "test_window": k},
 *    "regularize": {"rule": name, "threshold": x, "day_width": d}}
 * Without "split" it reports detection metrics on the full log. */
ssp_status ssp_evaluate(const ssp_graph* graph, const ssp_cascades* cascades,
                        const char* config_json, char** report_json);

/* config_json:
 *   {"methods": ["greedy", "rw:degree", ...], "budget": B,
 *    "replications": r, "seeds": [s...], "bucket_width": w, "jobs": j}
 * Emits one CSV row per (method, replication) and a JSON mirror with
 * parameter echo and mean/std aggregates. Byte-deterministic given seeds. */
ssp_status ssp_bench(const ssp_graph* graph, const ssp_cascades* cascades,
                     const char* config_json, char** csv_out, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* SENSORPLACE_H */
