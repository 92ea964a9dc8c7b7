#ifndef UNIPRED_UNIPRED_H
#define UNIPRED_UNIPRED_H

#include <stddef.h>
#include <stdint.h>

#if defined(UNIPRED_BUILDING_LIBRARY)
#define UNIPRED_API __attribute__((visibility("default")))
#else
#define UNIPRED_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status; on failure unipred_last_error() describes it
   (thread-local, valid until the next failing call on the same thread).
   Strings handed out through char** are owned by the caller and must be
   released with unipred_string_free. Probabilities cross the boundary as
   exact "num/den" strings. Bit strings are '0'/'1' text; "" and "^" are both
   the empty string. */

typedef enum unipred_status {
  UNIPRED_OK = 0,
  UNIPRED_E_INVALID_ARGUMENT = 1,
  UNIPRED_E_PARSE = 2,
  UNIPRED_E_IO = 3,
  UNIPRED_E_UNDEFINED = 4,
  UNIPRED_E_ZERO_NORMALIZER = 5,
  UNIPRED_E_COMA = 6,
  UNIPRED_E_INVARIANT = 7,
  UNIPRED_E_RANGE = 8,
  UNIPRED_E_INTERNAL = 9
} unipred_status;

typedef enum unipred_run_status {
  UNIPRED_RUN_HALTED = 0,
  UNIPRED_RUN_OUT_OF_STEPS = 1,
  UNIPRED_RUN_INPUT_EXHAUSTED = 2
} unipred_run_status;

typedef struct unipred_pool unipred_pool;
typedef struct unipred_aggregator unipred_aggregator;
typedef struct unipred_engine unipred_engine;

UNIPRED_API const char* unipred_version(void);
UNIPRED_API const char* unipred_last_error(void);
UNIPRED_API const char* unipred_status_name(unipred_status s);
UNIPRED_API void unipred_string_free(char* s);
UNIPRED_API unipred_status unipred_set_threads(unsigned threads);

/* Hypothesis pools */
UNIPRED_API unipred_status unipred_pool_default(size_t n, unipred_pool** out);
UNIPRED_API unipred_status unipred_pool_from_json(const char* json, unipred_pool** out);
UNIPRED_API unipred_status unipred_pool_load(const char* path, unipred_pool** out);
UNIPRED_API void unipred_pool_free(unipred_pool* pool);
UNIPRED_API size_t unipred_pool_size(const unipred_pool* pool);
UNIPRED_API unipred_status unipred_pool_describe(const unipred_pool* pool, size_t i, char** out);
UNIPRED_API unipred_status unipred_pool_weight(const unipred_pool* pool, size_t i, char** out);

/* Mixture. *defined is set to 0 when the conditioning prefix has mixture mass 0. */
UNIPRED_API unipred_status unipred_mixture_value(const unipred_pool* pool, const char* x, char** out);
UNIPRED_API unipred_status unipred_mixture_predict(const unipred_pool* pool, const char* x, int bit, char** out,
                                                   int* defined);
UNIPRED_API unipred_status unipred_check_domination(const unipred_pool* pool, size_t i, const char* x, int* holds);

/* Sequential aggregator */
UNIPRED_API unipred_status unipred_aggregator_new(const unipred_pool* pool, unipred_aggregator** out);
UNIPRED_API void unipred_aggregator_free(unipred_aggregator* agg);
UNIPRED_API unipred_status unipred_aggregator_update(unipred_aggregator* agg, int bit);
UNIPRED_API unipred_status unipred_aggregator_predict(const unipred_aggregator* agg, int bit, char** out);
UNIPRED_API unipred_status unipred_aggregator_weight(const unipred_aggregator* agg, size_t i, char** out);
UNIPRED_API size_t unipred_aggregator_time(const unipred_aggregator* agg);

/* MONO machine and resource-bounded algorithmic probability */
UNIPRED_API unipred_status unipred_run_machine(const char* program, uint64_t max_steps, char** output,
                                               unipred_run_status* status, size_t* consumed);
UNIPRED_API unipred_status unipred_engine_new(size_t max_program_len, uint64_t max_steps, unipred_engine** out);
UNIPRED_API void unipred_engine_free(unipred_engine* engine);
UNIPRED_API unipred_status unipred_engine_algprob(const unipred_engine* engine, const char* y, char** out);
/* *km = -1 when no description exists at this bound. */
UNIPRED_API unipred_status unipred_engine_km(const unipred_engine* engine, const char* y, long* km);
UNIPRED_API unipred_status unipred_solomonoff_predict(const unipred_engine* engine, const char* x, int bit,
                                                      char** raw, char** normalized);

/* LZ76 */
UNIPRED_API unipred_status unipred_lz_complexity(const char* x, uint64_t* bits, size_t* phrases);

/* Harness */
UNIPRED_API unipred_status unipred_ingest(const char* path, char** out);
UNIPRED_API unipred_status unipred_sample(const char* spec_json, size_t length, uint64_t seed, char** out);

/* Reports behind the CLI subcommands. `command` is one of predict, regret,
   diag, algoprob, km, trace, lz, ingest-check; `args_json` is a JSON object of
   its parameters; `format` is "csv" or "json". *ok is 0 when an invariant
   check inside the report failed. */
UNIPRED_API unipred_status unipred_report(const char* command, const char* args_json, const char* format, char** text,
                                          int* ok);

/* Runs an experiment config file. output_prefix may be NULL to use the
   config's own "output". *summary_json receives the run summary. */
UNIPRED_API unipred_status unipred_run_experiment(const char* config_path, const char* output_prefix,
                                                  char** summary_json, int* ok);

#ifdef __cplusplus
}
#endif

#endif
