/* evodrh — evolutionary de Rham-Hodge spectra of point-cloud filtrations.
 *
 * C interface over the shared library: opaque handles, integer status codes,
 * a thread-local error message. Configuration uses the same key=value pairs
 * as the config file; see README.md for the key list.
 */
#ifndef EVODRH_H
#define EVODRH_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evodrh_status {
    EVODRH_OK = 0,
    EVODRH_ERR_INVALID_ARGUMENT = 1,
    EVODRH_ERR_PARSE = 2,
    EVODRH_ERR_IO = 3,
    EVODRH_ERR_RESOURCE = 4,
    EVODRH_ERR_SOLVER = 5,
    EVODRH_ERR_ORACLE_MISMATCH = 6,
    EVODRH_ERR_INTERNAL = 7
} evodrh_status;

typedef struct evodrh_config evodrh_config;
typedef struct evodrh_result evodrh_result;

const char* evodrh_version(void);

/* Message describing the most recent failure on this thread ("" if none). */
const char* evodrh_last_error(void);

evodrh_config* evodrh_config_create(void);
void evodrh_config_destroy(evodrh_config* cfg);
evodrh_status evodrh_config_set(evodrh_config* cfg, const char* key,
                                const char* value);
evodrh_status evodrh_config_load_file(evodrh_config* cfg, const char* path);

/* Run the full sweep. On success *out owns the result. */
evodrh_status evodrh_run_sweep(const evodrh_config* cfg, evodrh_result** out);
void evodrh_result_destroy(evodrh_result* result);

/* Write spectra.csv, intervals.csv, run.json, plot.gp into dir. */
evodrh_status evodrh_result_emit(const evodrh_result* result, const char* dir);

double evodrh_result_c_max(const evodrh_result* result);
size_t evodrh_result_row_count(const evodrh_result* result);

/* Per-row data: betti is int[3], fiedler double[3] (NaN when absent). */
evodrh_status evodrh_result_row(const evodrh_result* result, size_t index,
                                double* c, long long betti[3], double fiedler[3]);

size_t evodrh_result_interval_count(const evodrh_result* result);
/* death is +infinity for open-ended generators. */
evodrh_status evodrh_result_interval(const evodrh_result* result, size_t index,
                                     int* dim, double* birth, double* death,
                                     int* generator);

size_t evodrh_result_warning_count(const evodrh_result* result);
const char* evodrh_result_warning(const evodrh_result* result, size_t index);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EVODRH_H */
