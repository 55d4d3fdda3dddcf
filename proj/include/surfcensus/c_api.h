#ifndef SURFCENSUS_C_API_H
#define SURFCENSUS_C_API_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SC_API __attribute__((visibility("default")))
#else
#define SC_API
#endif

/* Status codes double as census exit codes. */
typedef enum sc_status {
  SC_OK = 0,
  SC_USAGE = 2,
  SC_INVALID_INPUT = 3,
  SC_STRUCTURAL = 4,
  SC_VALIDATION = 5,
  SC_RESOURCE = 6,
  SC_CONSTRUCTION = 7,
  SC_INVARIANT_VIOLATION = 8,
  SC_IO = 9,
  SC_MALFORMED = 10,
  SC_NOT_SURFACE = 11,
  SC_INTERNAL = 12
} sc_status;

typedef struct sc_polyhedron sc_polyhedron;

SC_API int sc_schema_version(void);
SC_API const char* sc_status_name(int status);
/* Message of the last failure on this thread; empty after success. */
SC_API const char* sc_last_error(void);

/* Builtin name (dodecahedron, cube, dodecahedron-double) or JSON path. */
SC_API int sc_polyhedron_load(const char* name_or_path, sc_polyhedron** out);
SC_API void sc_polyhedron_free(sc_polyhedron* p);
SC_API int sc_polyhedron_counts(const sc_polyhedron* p, int* faces, int* edges, int* vertices);

/* Strings returned through char** are owned by the caller; release with sc_string_free. */
SC_API void sc_string_free(char* s);

/* Report is written even when validation fails; the status tells which. */
SC_API int sc_validate_report(const sc_polyhedron* p, char** out_text);

SC_API int sc_bounds_report(const sc_polyhedron* p, int workers, char** out_csv);
/* Exhaustive bounded-degree graph counts, |V| <= max_vertices, degree <= max_n. */
SC_API int sc_graph_count_report(int max_vertices, int max_n, char** out_csv);
SC_API int sc_thresholds_report(char** out_csv);

/* sigma: "all", "transpositions" or "cycles:(1 2);(1 3)". f1, f2 < 0 pick defaults. */
SC_API int sc_census_report(const sc_polyhedron* p, int f1, int f2, int n_lo, int n_hi, const char* sigma,
                            int workers, char** out_csv, char** out_detail);
/* radius <= 0 selects 2n+1. */
SC_API int sc_covers_report(int n_lo, int n_hi, const char* sigma, int radius, char** out_csv);
SC_API int sc_coxeter_ball_report(const sc_polyhedron* p, int radius, uint64_t seed, int samples, char** out_csv);
SC_API int sc_qi_report(double k, double c, int pairs, uint64_t seed, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif
