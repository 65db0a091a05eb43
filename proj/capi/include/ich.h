/* C interface to the inertial Cahn-Hilliard lab: opaque handles and
 * integer status codes over the C++ core. All functions return one of the
 * ICH_* codes; ich_last_error() describes the most recent failure on the
 * calling thread. Strings returned through out-parameters are owned by
 * the caller and released with ich_string_free(). */
#ifndef ICH_H
#define ICH_H

#ifdef __cplusplus
extern "C" {
#endif

#define ICH_OK 0
#define ICH_ERR_CONFIG 2     /* config parse/validation error */
#define ICH_ERR_ASSUMPTION 3 /* nonlinearity assumptions rejected */
#define ICH_ERR_NUMERIC 4    /* numerical failure */
#define ICH_ERR_VERIFY 5     /* acceptance suite failed */
#define ICH_ERR_IO 6         /* file i/o error */

typedef struct ich_config ich_config;

const char* ich_version(void);
const char* ich_last_error(void);
void ich_string_free(char* s);

int ich_config_load(const char* path, ich_config** out);
int ich_config_parse_text(const char* text, ich_config** out);
/* override the [output] dir after parsing (CLI -o flag) */
int ich_config_set_output_dir(ich_config* cfg, const char* dir);
void ich_config_free(ich_config* cfg);

/* Each command writes its artifacts under the configured output dir and,
 * when report != NULL, hands back a JSON summary. */
int ich_run_validate(const ich_config* cfg, char** report);
int ich_run_simulate(const ich_config* cfg, char** report);
int ich_run_equilibria(const ich_config* cfg, char** report);
int ich_run_glue(const ich_config* cfg, char** report);
int ich_run_split(const ich_config* cfg, char** report);
int ich_run_eps_sweep(const ich_config* cfg, char** report);
int ich_run_converge(const ich_config* cfg, char** report);

/* Acceptance suite. tol_scale rescales every tolerance (test-only;
 * 1.0 for real runs); criterion = 0 runs all eleven. The pass/fail table
 * is returned through table. */
int ich_verify(double tol_scale, int criterion, char** table);

#ifdef __cplusplus
}
#endif

#endif /* ICH_H */
