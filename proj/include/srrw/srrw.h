#ifndef SRRW_H
#define SRRW_H

/* C interface to the self-repellent random walk library. All functions
 * returning int use the status codes below, which double as the CLI exit
 * codes; on failure srrw_last_error() carries a message for the calling
 * thread. Handles are opaque and freed with their matching _free call. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    SRRW_OK = 0,
    SRRW_VALIDATION_FAIL = 1,
    SRRW_CONFIG_ERROR = 2,
    SRRW_NUMERIC_ERROR = 3,
    SRRW_INTERNAL_ERROR = 4
};

/* Message for the most recent failure on this thread; never NULL. */
const char* srrw_last_error(void);

typedef struct srrw_config srrw_config;
typedef struct srrw_chain srrw_chain;

/* Key = value experiment description; see the project README for the keys.
 * NULL on failure (srrw_last_error has the reason). */
srrw_config* srrw_config_parse_file(const char* path);
srrw_config* srrw_config_parse_text(const char* text);
void srrw_config_free(srrw_config* cfg);
void srrw_config_set_seed(srrw_config* cfg, uint64_t seed);

/* Canonical serialization (parse . serialize is the identity); free the
 * returned string with srrw_string_free. */
char* srrw_config_serialize(const srrw_config* cfg);
void srrw_string_free(char* s);

/* Output directory resolution: flag value, config key, SRRW_OUT_DIR, working
 * directory; the directory is created when missing. */
int srrw_resolve_out_dir(const srrw_config* cfg, const char* flag_value, char* buf,
                         size_t cap);

/* Base chain described by the config (graph + kernel construction). */
srrw_chain* srrw_chain_from_config(const srrw_config* cfg);
void srrw_chain_free(srrw_chain* chain);
int srrw_chain_node_count(const srrw_chain* chain);
/* Target distribution of the chain; buf must hold node_count doubles. */
int srrw_chain_stationary(const srrw_chain* chain, double* buf, size_t cap);
/* Second-largest eigenvalue modulus. */
int srrw_chain_slem(const srrw_chain* chain, double* out);

/* Subcommand cores. Log lines (without trailing newline) are delivered to
 * the callback when it is non-NULL. Output files land in out_dir. */
typedef void (*srrw_log_fn)(const char* line, void* user);

int srrw_cmd_spectrum(const srrw_config* cfg, const char* out_dir, srrw_log_fn log,
                      void* user);
int srrw_cmd_simulate(const srrw_config* cfg, const char* out_dir, int workers,
                      srrw_log_fn log, void* user);
int srrw_cmd_ode(const srrw_config* cfg, const char* out_dir, srrw_log_fn log, void* user);
int srrw_cmd_analyze(const srrw_config* cfg, const char* out_dir, srrw_log_fn log,
                     void* user);

/* Built-in validation suite. One callback per check; returns SRRW_OK when
 * every check passes, SRRW_VALIDATION_FAIL otherwise. */
typedef void (*srrw_check_fn)(const char* id, const char* name, int pass,
                              const char* detail, double seconds, void* user);
int srrw_validate(int quick, int inject_dbe_break, srrw_check_fn cb, void* user);

#ifdef __cplusplus
}
#endif

#endif /* SRRW_H */
