/* C interface to the market simulator. All functions return an asam_status;
 * on failure asam_last_error() describes the most recent error of the
 * calling thread. */
#ifndef ASAM_H
#define ASAM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ASAM_BUILDING_LIBRARY)
#    define ASAM_API __declspec(dllexport)
#  else
#    define ASAM_API __declspec(dllimport)
#  endif
#else
#  define ASAM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct asam_sim asam_sim;

typedef enum asam_status {
    ASAM_OK = 0,
    ASAM_INVALID_ARGUMENT = 1,
    ASAM_SCENARIO = 2, /* scenario files missing, malformed or not implemented */
    ASAM_IO = 3,
    ASAM_SOLVER = 4,   /* a step failed: dispatch, clearing or settlement */
    ASAM_STATE = 5,    /* call not valid in the current state (e.g. run finished) */
    ASAM_INTERNAL = 6
} asam_status;

typedef struct asam_time {
    int day;
    int mtu;
} asam_time;

typedef struct asam_summary {
    int steps_done;
    int dam_clearings;
    int idm_clearings;
    int rdm_commits;
    double dam_cleared_mwh;
    double dam_return_eur;
    double idm_cleared_mwh;
    double rdm_up_mwh;
    double rdm_down_mwh;
    double rdm_demand_mwh;    /* per direction */
    double rdm_under_mwh;     /* both directions */
    double rdm_over_mwh;
    double induced_imbalance_mwh;
    double grid_operator_cost_eur;
    int diagnostics;
} asam_summary;

ASAM_API const char* asam_version(void);
ASAM_API const char* asam_last_error(void);

/* Loads and validates the scenario directory. */
ASAM_API asam_status asam_open(const char* scenario_dir, asam_sim** out);
ASAM_API void asam_close(asam_sim* sim);

/* Overrides applied before the first step. */
ASAM_API asam_status asam_set_seed(asam_sim* sim, uint64_t seed);
ASAM_API asam_status asam_set_steps(asam_sim* sim, int steps);

ASAM_API asam_status asam_step(asam_sim* sim);
ASAM_API asam_status asam_run(asam_sim* sim);
ASAM_API asam_status asam_current_time(const asam_sim* sim, asam_time* out);
ASAM_API asam_status asam_summary_get(const asam_sim* sim, asam_summary* out);
ASAM_API asam_status asam_write_outputs(const asam_sim* sim, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif
