#ifndef GAMMADYN_GAMMADYN_H
#define GAMMADYN_GAMMADYN_H

/*
 * C interface of libgammadyn.
 *
 * gd_run executes one analysis command on a JSON payload and hands back an
 * opaque report that owns its JSON text. Every call that can fail returns a
 * gd_status; gd_run also returns an error report for failed runs.
 */

#include <stddef.h>

#if defined(_WIN32)
#define GD_API __declspec(dllimport)
#elif defined(GAMMADYN_BUILDING)
#define GD_API __attribute__((visibility("default")))
#else
#define GD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gd_status {
  GD_OK = 0,          /* verdicts decided */
  GD_UNKNOWN = 1,     /* analysis ran; some verdict is inconclusive */
  GD_BAD_INPUT = 2,   /* invalid command, payload or option */
  GD_INTERNAL = 3     /* invariant breach inside the library */
} gd_status;

typedef struct gd_options gd_options;
typedef struct gd_report gd_report;

/* Defaults: norm bound 20, orbit cap 10000, search depth 8, epsilon 1/1000000. */
GD_API gd_options* gd_options_create(void);
GD_API void gd_options_destroy(gd_options* options);
GD_API gd_status gd_options_set_norm_bound(gd_options* options, long norm_bound);
GD_API gd_status gd_options_set_orbit_cap(gd_options* options, size_t orbit_cap);
GD_API gd_status gd_options_set_search_depth(gd_options* options, size_t depth);
/* Rational as "p/q", decimal or scientific notation; must be positive.
   An explicitly set epsilon overrides an "epsilon" field in the payload. */
GD_API gd_status gd_options_set_epsilon(gd_options* options, const char* epsilon);

/* command: "toral", "h1", "invert", "shift" or "paper-example".
   input_json may be NULL for "paper-example"; options may be NULL for defaults.
   On return *report is non-NULL whenever report is non-NULL. */
GD_API gd_status gd_run(const char* command, const char* input_json, const gd_options* options, gd_report** report);

GD_API const char* gd_report_json(const gd_report* report);
GD_API gd_status gd_report_status(const gd_report* report);
GD_API void gd_report_free(gd_report* report);

/* Caps internal worker threads (0 is treated as 1). */
GD_API void gd_set_max_threads(size_t threads);
GD_API const char* gd_version(void);
GD_API const char* gd_status_name(gd_status status);

#ifdef __cplusplus
}
#endif

#endif
