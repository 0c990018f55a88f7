/* C API for the infilsim core: opaque handles plus status codes.
 * Every function returns IFS_OK on success; on failure the thread-local
 * message from ifs_last_error() describes what went wrong.
 */
#ifndef INFILSIM_INFILSIM_H
#define INFILSIM_INFILSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ifs_status {
    IFS_OK = 0,
    IFS_ERR_INVALID_ARGUMENT = 1, /* bad argument or config field */
    IFS_ERR_PARSE = 2,            /* malformed config or data file */
    IFS_ERR_IO = 3,               /* cannot read or write a file */
    IFS_ERR_UNATTAINABLE = 4,     /* calibration target out of reach */
    IFS_ERR_INTERNAL = 5
} ifs_status;

/* One loaded scenario: config plus overrides, ready to run. */
typedef struct ifs_scenario ifs_scenario;

const char* ifs_version(void);

/* Message for the most recent failing call on this thread. */
const char* ifs_last_error(void);

ifs_status ifs_scenario_open(const char* config_path, ifs_scenario** out);
ifs_status ifs_scenario_parse(const char* json_text, ifs_scenario** out);
void ifs_scenario_close(ifs_scenario* scenario);

ifs_status ifs_scenario_override_seed(ifs_scenario* scenario, uint64_t base_seed);
ifs_status ifs_scenario_override_replicas(ifs_scenario* scenario, uint32_t replicas);
ifs_status ifs_scenario_override_output_dir(ifs_scenario* scenario, const char* dir);

/* Serialized, fully resolved config. Free the result with ifs_string_free. */
ifs_status ifs_scenario_to_json(const ifs_scenario* scenario, char** out_json);
void ifs_string_free(char* text);

/* Runs every replica and writes event logs, per-replica CSVs, and
 * aggregate.csv under the scenario's output directory. */
ifs_status ifs_scenario_run(ifs_scenario* scenario, uint32_t jobs);

/* Bisects graph.fraction_private until the mean node gain over `replicas`
 * runs lands inside [node_gain_lo, node_gain_hi]. Out parameters are always
 * filled with the best probe; IFS_ERR_UNATTAINABLE reports a miss. */
ifs_status ifs_scenario_calibrate(ifs_scenario* scenario, double node_gain_lo,
                                  double node_gain_hi, uint32_t replicas,
                                  double* out_fraction_private, double* out_node_gain,
                                  double* out_edge_gain);

/* Markov clustering of a plain edge-list file; writes CSV "id,cluster".
 * out_cluster_count / out_converged may be NULL. */
ifs_status ifs_cluster_edge_list(const char* edge_list_path, const char* out_csv_path,
                                 int expansion, double inflation, double prune_threshold,
                                 int max_iterations, double convergence_eps,
                                 uint32_t* out_cluster_count, int* out_converged);

/* Organization crawl by a fresh observer with no friends. Reads the graph
 * from an attribute table plus an edge list, seeds from the comma-separated
 * id list, and writes <out_prefix>.edges and <out_prefix>.users.csv (the
 * latter with a provenance column). max_nodes 0 means unlimited. */
ifs_status ifs_crawl(const char* attributes_csv_path, const char* edge_list_path,
                     const char* seed_ids_csv, uint32_t target_org, double homophily_threshold,
                     uint64_t max_nodes, const char* out_prefix);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* INFILSIM_INFILSIM_H */
