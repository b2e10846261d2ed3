/* C interface to the tropical heights library. */
#ifndef TROPICAL_HEIGHTS_H
#define TROPICAL_HEIGHTS_H

#include <stddef.h>

#if defined(_WIN32)
#define TH_API __declspec(dllexport)
#else
#define TH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum th_status {
    TH_OK = 0,
    TH_CHECK_FAILED = 1, /* computed, but a requested consistency check failed */
    TH_INPUT_ERROR = 2,  /* malformed or inconsistent input; see th_last_error() */
    TH_NUMERIC_ERROR = 3,
    TH_INTERNAL_ERROR = 4
} th_status;

typedef struct th_graph th_graph;

/* Message for the last failing call on this thread, or "" if none. */
TH_API const char* th_last_error(void);
/* Releases strings returned through char** out-parameters. */
TH_API void th_string_free(char* s);
TH_API const char* th_version(void);

/* Graph JSON: vertices, edges, optional markings (with momenta) and minkowski form. */
TH_API int th_graph_from_json(const char* json, th_graph** out);
TH_API int th_graph_from_file(const char* path, th_graph** out);
TH_API void th_graph_free(th_graph* g);
TH_API int th_graph_counts(const th_graph* g, size_t* vertices, size_t* edges, size_t* betti);

/* method: "det" (default) or "trees"; writes the canonical polynomial string. */
TH_API int th_symanzik_first(const th_graph* g, const char* method, char** out);
/* method: "bordered" (default) or "forests". */
TH_API int th_symanzik_second(const th_graph* g, const char* method, char** out);
/* method: "schur" (default), "resistance", "forests", "bordered", "trees", "det";
 * y: "e1=1.0,e2=2.5" covering every edge. */
TH_API int th_symanzik_ratio(const th_graph* g, const char* method, const char* y, double* out);
/* Runs every method for "first", "second" or "ratio" and writes a JSON agreement report;
 * returns TH_CHECK_FAILED on disagreement. */
TH_API int th_symanzik_check(const th_graph* g, const char* which, const char* y, char** out);

/* what: "stability", "genus" or "dimensions"; marked < 0 uses markings when present. */
TH_API int th_curve_report(const th_graph* g, const char* what, int marked, char** out);

/* action: "build" (all N_e as JSON) or "check" (nilpotency and lift identities). */
TH_API int th_monodromy_run(const th_graph* g, const char* fixture_json, const char* action, char** out);

TH_API int th_poincare_norm(const char* point_json, double* out);

/* Limit of alpha' * height along an admissible segment; JSON report. */
TH_API int th_limit_eval(const th_graph* g, const char* fixture_json, const char* segment_json, char** out);

/* Degenerating torus family; JSON report {estimate, prediction, rel_error, slope, ...}. */
TH_API int th_lab_torus_limit(const char* family_json, char** out);
/* Height <z1 - z2, z3 - z4> on the sphere for four points; JSON report. */
TH_API int th_lab_sphere_crossratio(const double* re, const double* im, size_t n, char** out);

/* Cross-method agreement over every *.json graph in a directory; threads <= 0 means 1.
 * Returns TH_CHECK_FAILED if any row fails. */
TH_API int th_corpus_run(const char* dir, int threads, int with_timing, char** out);

#ifdef __cplusplus
}
#endif

#endif
