#ifndef AWRSIM_H
#define AWRSIM_H

/* C interface to the awrsim congestion-flow simulator. All entry points are
 * thread-safe; handles must not be shared between threads without external
 * synchronization. Every function returning awrsim_status leaves a
 * machine-readable JSON description of the failure in awrsim_last_error()
 * when the status is not AWRSIM_OK. */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum awrsim_status {
    AWRSIM_OK = 0,
    AWRSIM_ERR_ARGUMENT = 1, /* bad handle, null pointer, or domain violation */
    AWRSIM_ERR_PARSE = 2,    /* malformed configuration or input file */
    AWRSIM_ERR_VALIDATE = 3, /* initial data rejected by an admissibility check */
    AWRSIM_ERR_RUN = 4,      /* solver hard failure */
    AWRSIM_ERR_IO = 5        /* file read/write failure */
} awrsim_status;

typedef struct awrsim_config awrsim_config; /* opaque parsed configuration */
typedef struct awrsim_result awrsim_result; /* opaque result document */

const char *awrsim_version(void);
const char *awrsim_status_name(awrsim_status status);

/* JSON text describing the most recent failure on this thread, e.g.
 * {"code":"parse","message":"missing key: epsilon","detail":"epsilon"}. */
const char *awrsim_last_error(void);

awrsim_status awrsim_config_load(const char *path, awrsim_config **out);
awrsim_status awrsim_config_parse(const char *text, awrsim_config **out);
awrsim_status awrsim_config_set(awrsim_config *cfg, const char *key, const char *value);
void awrsim_config_free(awrsim_config *cfg);

/* Executes one simulation. When out_dir is non-null, writes diagnostics.csv,
 * state.csv and summary.json there. The result document is the run summary. */
awrsim_status awrsim_run(const awrsim_config *cfg, const char *out_dir,
                         awrsim_result **out);

/* Runs the epsilon sweep of the config. When out_dir is non-null, writes
 * report.json, per-epsilon diagnostics CSVs, sweep_summary.csv and a gnuplot
 * script. The result document is the sweep report. */
awrsim_status awrsim_sweep(const awrsim_config *cfg, const char *out_dir,
                           awrsim_result **out);

/* Runs the sticky-blocks reference dynamics alone. When out_dir is non-null,
 * writes blocks.json (a snapshot time series). */
awrsim_status awrsim_oracle(const awrsim_config *cfg, const char *out_dir,
                            awrsim_result **out);

/* Cumulative-mass distance between a terminal state CSV (written by
 * awrsim_run) and a block-system JSON (written by awrsim_oracle). */
awrsim_status awrsim_compare(const char *state_csv_path, const char *blocks_json_path,
                             awrsim_result **out);

/* The result's JSON text; owned by the result handle. */
const char *awrsim_result_json(const awrsim_result *res);

/* Numeric lookup by JSON pointer, e.g. "/ceiling_slope" or
 * "/rows/0/ceiling_gap". AWRSIM_ERR_ARGUMENT when absent or non-numeric. */
awrsim_status awrsim_result_number(const awrsim_result *res, const char *json_pointer,
                                   double *value);

void awrsim_result_free(awrsim_result *res);

#ifdef __cplusplus
}
#endif

#endif /* AWRSIM_H */
