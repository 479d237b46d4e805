#ifndef ROADGEN_ROADGEN_H
#define ROADGEN_ROADGEN_H

#include <stddef.h>
#include <stdint.h>

#if defined(ROADGEN_BUILDING_LIBRARY)
#define RG_API __attribute__((visibility("default")))
#else
#define RG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rg_status {
  RG_OK = 0,
  RG_INVALID_ARGUMENT = 1, /* null handle or out-of-range value */
  RG_PRECONDITION = 2,
  RG_PARSE = 3,
  RG_VALIDATION = 4,
  RG_IO = 5,
  RG_INTERNAL = 6
} rg_status;

typedef enum rg_mode { RG_MODE_GUIDED = 0, RG_MODE_RANDOM = 1 } rg_mode;

typedef enum rg_budget_kind { RG_BUDGET_COUNT = 0, RG_BUDGET_MILLISECONDS = 1 } rg_budget_kind;

typedef struct rg_catalog rg_catalog;
typedef struct rg_constraints rg_constraints;
typedef struct rg_scenario rg_scenario;
typedef struct rg_batch rg_batch;
typedef struct rg_generator rg_generator;

/* Message for the last failed call on this thread; never null. */
RG_API const char* rg_last_error(void);
/* Line/column of the last RG_PARSE failure on this thread; 0 when unknown. */
RG_API void rg_last_parse_position(size_t* line, size_t* column);

/* Frees strings returned through char** out-parameters. */
RG_API void rg_string_free(char* text);

/* Kind names indexed 0..7; null for other values. */
RG_API const char* rg_kind_name(int kind);
RG_API const char* rg_marking_name(int marking);

/* Catalog ------------------------------------------------------------------ */

RG_API rg_status rg_catalog_default(rg_catalog** out);
RG_API rg_status rg_catalog_from_text(const char* text, size_t length, rg_catalog** out);
RG_API void rg_catalog_free(rg_catalog* catalog);
RG_API size_t rg_catalog_size(const rg_catalog* catalog);
RG_API rg_status rg_catalog_listing(const rg_catalog* catalog, char** out);
RG_API rg_status rg_catalog_hash(const rg_catalog* catalog, char** out);

/* Constraints -------------------------------------------------------------- */

RG_API rg_status rg_constraints_default(rg_constraints** out);
RG_API rg_status rg_constraints_from_text(const char* text, size_t length, rg_constraints** out);
RG_API void rg_constraints_free(rg_constraints* constraints);
/* Canonical JSON form. */
RG_API rg_status rg_constraints_to_json(const rg_constraints* constraints, char** out);

/* Generation --------------------------------------------------------------- */

/* Incremental batch: one shared usage counter, one scenario per call. */
RG_API rg_status rg_generator_new(const rg_catalog* catalog, const rg_constraints* constraints, rg_mode mode,
                                  int total_count, uint64_t seed, rg_generator** out);
RG_API rg_status rg_generator_next(rg_generator* generator, rg_scenario** out);
RG_API void rg_generator_free(rg_generator* generator);

RG_API rg_status rg_generate(const rg_catalog* catalog, const rg_constraints* constraints, rg_mode mode,
                             rg_budget_kind budget_kind, uint64_t budget_value, int total_count, uint64_t seed,
                             rg_batch** out);
RG_API size_t rg_batch_size(const rg_batch* batch);
/* Borrowed; valid until rg_batch_free. */
RG_API const rg_scenario* rg_batch_at(const rg_batch* batch, size_t index);
RG_API void rg_batch_free(rg_batch* batch);

/* Scenarios ---------------------------------------------------------------- */

typedef struct rg_instance_info {
  int32_t id;
  int32_t template_id;
  int32_t kind;
  int32_t variant;
  int32_t lane_count;
  int32_t marking;
  int32_t bidirectional;
  int32_t endpoint_count;
  double length;
  double lane_width;
  double start_x;
  double start_y;
  double start_heading; /* radians */
} rg_instance_info;

RG_API rg_status rg_scenario_from_json(const char* text, size_t length, rg_scenario** out);
RG_API rg_status rg_scenario_clone(const rg_scenario* scenario, rg_scenario** out);
RG_API void rg_scenario_free(rg_scenario* scenario);

/* Document metadata carried by the handle and written by rg_scenario_to_json.
 * Strings may be null (stored as empty). */
RG_API rg_status rg_scenario_set_metadata(rg_scenario* scenario, const char* mode, const char* catalog_hash,
                                          int64_t batch_index);
RG_API const char* rg_scenario_mode(const rg_scenario* scenario);
RG_API const char* rg_scenario_catalog_hash(const rg_scenario* scenario);
RG_API int64_t rg_scenario_batch_index(const rg_scenario* scenario);

RG_API rg_status rg_scenario_to_json(const rg_scenario* scenario, char** out);
RG_API rg_status rg_scenario_to_xodr(const rg_scenario* scenario, char** out);
RG_API rg_status rg_scenario_to_svg(const rg_scenario* scenario, double scale, char** out);

RG_API uint64_t rg_scenario_seed(const rg_scenario* scenario);
RG_API int rg_scenario_is_short(const rg_scenario* scenario);
RG_API size_t rg_scenario_instance_count(const rg_scenario* scenario);
RG_API size_t rg_scenario_connection_count(const rg_scenario* scenario);
RG_API rg_status rg_scenario_instance(const rg_scenario* scenario, size_t index, rg_instance_info* out);
/* Re-checks every scenario invariant. */
RG_API rg_status rg_scenario_validate(const rg_scenario* scenario);

/* Analysis ----------------------------------------------------------------- */

RG_API rg_status rg_similarity(const rg_scenario* a, const rg_scenario* b, double* out);
/* kept_indices must hold `count` entries; *kept_count receives how many are used. */
RG_API rg_status rg_deduplicate(const rg_scenario* const* scenarios, size_t count, double threshold,
                                size_t* kept_indices, size_t* kept_count);
RG_API rg_status rg_uniqueness_rate(size_t before, size_t after, double* out);

typedef struct rg_coverage_report {
  size_t catalog_size;
  size_t templates_covered;
  size_t placed_components;
  int64_t scenarios_to_coverage;  /* -1 when never covered */
  int64_t components_to_coverage; /* -1 when never covered */
  size_t kind_histogram[8];
} rg_coverage_report;

RG_API rg_status rg_coverage(const rg_scenario* const* scenarios, size_t count, const rg_catalog* catalog,
                             rg_coverage_report* out);

/* Problems found by the OpenDRIVE subset validator, one per line; empty
 * string when the document conforms. */
RG_API rg_status rg_validate_xodr(const char* text, size_t length, char** problems);
/* RG_OK when well-formed, RG_PARSE otherwise (message in rg_last_error). */
RG_API rg_status rg_check_xml(const char* text, size_t length);

#ifdef __cplusplus
}
#endif

#endif
