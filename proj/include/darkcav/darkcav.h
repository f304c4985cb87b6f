/* darkcav: dark states of a cavity coupled to dipole-interacting two-level atoms.
 *
 * Plain C interface to the darkcav library. Objects are opaque handles created
 * by dc_*_create / dc_analyze / dc_simulate and released with the matching
 * dc_*_destroy. Every fallible call returns a dc_status; on failure
 * dc_last_error() describes the problem (per thread, valid until the next
 * failing call on that thread). Strings returned through char** are owned by
 * the caller and must be released with dc_string_free.
 *
 * Configs are JSON documents with "schema": "darkcav/1" (see README.md).
 */
#ifndef DARKCAV_DARKCAV_H
#define DARKCAV_DARKCAV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DARKCAV_BUILDING_LIBRARY)
#    define DC_API __declspec(dllexport)
#  else
#    define DC_API __declspec(dllimport)
#  endif
#else
#  define DC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dc_status {
  DC_OK = 0,
  DC_ERR_INVALID_ARGUMENT = 1,
  DC_ERR_NOT_FOUND = 2,
  DC_ERR_NUMERIC = 3,
  DC_ERR_DIMENSION = 4,
  DC_ERR_IO = 5,
  DC_ERR_INTERNAL = 99
} dc_status;

DC_API const char* dc_version(void);
DC_API const char* dc_last_error(void);
DC_API const char* dc_status_name(dc_status status);
DC_API void dc_string_free(char* s);

/* ---- system ---------------------------------------------------------- */

typedef struct dc_system dc_system;

/* v is a row-major n_atoms x n_atoms dipole matrix (symmetric, zero
 * diagonal) or NULL for no dipole coupling. */
DC_API dc_status dc_system_create(size_t n_atoms, const double* g, const double* v,
                                  double delta_a, double kappa, dc_system** out);
/* Builds the system from a config document ("system" and/or "geometry"). */
DC_API dc_status dc_system_from_config(const char* config_json, dc_system** out);
DC_API void dc_system_destroy(dc_system* sys);
/* Sets omega_a and omega_c; delta_a becomes omega_a - omega_c. */
DC_API dc_status dc_system_set_frequencies(dc_system* sys, double omega_a, double omega_c);
DC_API size_t dc_system_atoms(const dc_system* sys);

DC_API dc_status dc_subspace_dims(const dc_system* sys, unsigned n, size_t* dim,
                                  size_t* n_upper, size_t* n_lower);
DC_API dc_status dc_basis_label(const dc_system* sys, unsigned n, size_t index, char** out);
DC_API dc_status dc_basis_index(const dc_system* sys, unsigned n, const char* label,
                                size_t* out);
/* Rotating-frame Hamiltonian of subspace n, row-major into out (capacity
 * entries, at least dim*dim). With lab_frame != 0 the lab-frame matrix is
 * returned instead (needs dc_system_set_frequencies). */
DC_API dc_status dc_hamiltonian(const dc_system* sys, unsigned n, int lab_frame, double* out,
                                size_t capacity);
/* Dark-state count in subspace n from the arrowhead detector and from the
 * brute-force oracle; *agree is 1 when counts and subspaces coincide. */
DC_API dc_status dc_dark_count(const dc_system* sys, unsigned n, size_t* detected,
                               size_t* oracle, int* agree);

/* ---- analysis -------------------------------------------------------- */

typedef struct dc_report dc_report;

/* Runs detector and oracle on every subspace of analyze.n. `command` is
 * recorded in the report ("analyze" or "geometry"). */
DC_API dc_status dc_analyze(const char* config_json, const char* command, dc_report** out);
DC_API int dc_report_agree(const dc_report* report);
DC_API size_t dc_report_total_dark(const dc_report* report);
DC_API dc_status dc_report_json(const dc_report* report, char** out);
DC_API dc_status dc_report_summary(const dc_report* report, char** out);
DC_API void dc_report_destroy(dc_report* report);

typedef struct dc_discriminant {
  double P;
  double Q;
  double delta;
  int degenerate;
  int equal_magnitudes;
  int all_zero;
} dc_discriminant;

DC_API dc_status dc_cardano(double v12, double v13, double v23, dc_discriminant* out);

/* ---- dynamics -------------------------------------------------------- */

typedef struct dc_trajectory dc_trajectory;

typedef struct dc_diagnostics {
  double dt;
  double trace_drift;
  double hermiticity_error;
  double min_eigenvalue;
  double max_excitation_rise;
  double convergence_error;
  double dark_flatness;
  size_t clipped;
} dc_diagnostics;

/* Integrates the "simulate" section of a config. A step violating
 * dt * max(kappa, |H|_max) <= 0.05 is rejected with DC_ERR_INVALID_ARGUMENT. */
DC_API dc_status dc_simulate(const char* config_json, dc_trajectory** out);
DC_API size_t dc_trajectory_samples(const dc_trajectory* t);
DC_API size_t dc_trajectory_watch_count(const dc_trajectory* t);
DC_API dc_status dc_trajectory_watch_name(const dc_trajectory* t, size_t watch, char** out);
DC_API dc_status dc_trajectory_time(const dc_trajectory* t, size_t sample, double* out);
DC_API dc_status dc_trajectory_population(const dc_trajectory* t, size_t watch, size_t sample,
                                          double* out);
DC_API dc_status dc_trajectory_diagnostics(const dc_trajectory* t, dc_diagnostics* out);
DC_API dc_status dc_trajectory_csv(const dc_trajectory* t, char** out);
DC_API dc_status dc_trajectory_summary(const dc_trajectory* t, char** out);
DC_API void dc_trajectory_destroy(dc_trajectory* t);

/* ---- scans and configs ----------------------------------------------- */

/* Runs the "scan" section and returns the CSV table. */
DC_API dc_status dc_scan(const char* config_json, uint64_t seed, char** csv_out);

/* Validates a config document (syntax, schema, units). */
DC_API dc_status dc_config_check(const char* config_json);
/* Returns a copy of the config with one key=value override applied. */
DC_API dc_status dc_config_override(const char* config_json, const char* key, const char* value,
                                    char** out_json);
/* Space-separated list of keys accepted by dc_config_override. */
DC_API const char* dc_override_keys(void);

#ifdef __cplusplus
}
#endif

#endif /* DARKCAV_DARKCAV_H */
