/* C API for the bosonic heat-engine simulator. All functions return 0 on
 * success or a nonzero error code; the matching message is available from
 * bhe_last_error() on the same thread. Strings returned through `char**`
 * parameters are heap-allocated JSON documents owned by the caller; release
 * them with bhe_string_free(). */

#ifndef BHE_H
#define BHE_H

#ifdef __cplusplus
extern "C" {
#endif

enum {
  BHE_OK = 0,
  BHE_ERR_CONFIG = 2,  /* malformed input, schema violation, bad parameter */
  BHE_ERR_PHYSICS = 3, /* domain constraint: regime, coupling bound, ...   */
  BHE_ERR_NUMERIC = 4, /* truncation / precision failure                   */
  BHE_ERR_IO = 5
};

typedef struct bhe_engine bhe_engine;

const char* bhe_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
const char* bhe_last_error(void);

void bhe_string_free(char* s);

/* engine_json: {"engine": {"n","m","omega_a","omega_b","beta_a","beta_b"},
 *               "coupling": {"mode":"theta"|"alpha","value","order":2|4},
 *               "oracle": { optional truncation overrides }} */
int bhe_engine_create(const char* engine_json, bhe_engine** out);
void bhe_engine_destroy(bhe_engine* engine);

/* method: "oracle" | "pert2" | "pert4". Output JSON carries the work/heat
 * distribution, moments, regime classification, and coupling bounds. */
int bhe_simulate(const bhe_engine* engine, const char* method,
                 char** json_out);

/* TUR bounds and violation flags for the given method. */
int bhe_tur_json(const bhe_engine* engine, const char* method,
                 char** json_out);

/* Oracle-vs-perturbative convergence study on the grid
 * theta_max / 2^j, j = 0..halvings-1 (halvings >= 3). */
int bhe_validate_json(const bhe_engine* engine, double theta_max,
                      int halvings, char** json_out);

/* request_json: {"family":"nm","omega_a","omega_b","beta_a","beta_b",
 *                "alpha","n_max","m_max"}
 *            or {"family":"xmax","x","y","beta_a_omega_a","alpha"}
 *            or {"family":"freq21"|"freq12","beta_a","y","alpha"} */
int bhe_optimize_json(const char* request_json, char** json_out);

/* Runs a full sweep config (same schema as engine_json plus "axes",
 * "methods", "outputs") and writes the CSV to out_path. */
int bhe_sweep_run(const char* config_json, const char* out_path, int jobs);

#ifdef __cplusplus
}
#endif

#endif /* BHE_H */
