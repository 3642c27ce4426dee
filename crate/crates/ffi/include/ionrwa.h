#ifndef IONRWA_H
#define IONRWA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IonrwaStatus {
  IONRWA_STATUS_OK = 0,
  IONRWA_STATUS_NULL_POINTER = 1,
  IONRWA_STATUS_DOMAIN = 2,
  IONRWA_STATUS_CUTOFF = 3,
  IONRWA_STATUS_CONTRACT = 4,
  IONRWA_STATUS_INTERNAL = 5,
  IONRWA_STATUS_PROPAGATION = 6,
  IONRWA_STATUS_CONFIG = 7,
  IONRWA_STATUS_IO = 8,
  IONRWA_STATUS_PANIC = 9,
} IonrwaStatus;

typedef enum IonrwaKind {
  IONRWA_KIND_FULL = 0,
  IONRWA_KIND_RWA = 1,
} IonrwaKind;

/**
 * Opaque oracle bound to one parameter set and Fock cutoff.
 */
typedef struct IonrwaOracle IonrwaOracle;

/**
 * Opaque parameter set.
 */
typedef struct IonrwaParams IonrwaParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next library call on the same thread.
 */
const char *ionrwa_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ionrwa_version(void);

/**
 * Creates a validated parameter set. `fock_dim` is the highest retained
 * Fock occupation.
 *
 * # Safety
 * `out_params` must be a valid pointer.
 */
enum IonrwaStatus ionrwa_params_new(double nu_ratio,
                                    double omega_a_ratio,
                                    double rabi_ratio,
                                    double eta,
                                    double alpha,
                                    size_t fock_dim,
                                    struct IonrwaParams **out_params);

/**
 * # Safety
 * `params` must come from [`ionrwa_params_new`] and not be used afterwards. Null is ignored.
 */
void ionrwa_params_free(struct IonrwaParams *params);

/**
 * # Safety
 * `params` must be a live handle.
 */
enum IonrwaStatus ionrwa_params_set_alpha(struct IonrwaParams *params, double alpha);

/**
 * # Safety
 * `params` must be a live handle.
 */
enum IonrwaStatus ionrwa_params_set_eta(struct IonrwaParams *params, double eta);

/**
 * Diagonalization time `t_k` in units of the inverse laser frequency.
 *
 * # Safety
 * `out_t` must be a valid pointer.
 */
enum IonrwaStatus ionrwa_diag_time(enum IonrwaKind kind, int64_t k, double *out_t);

/**
 * Diagonal elements of the rotated Hamiltonian at `t_k`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum IonrwaStatus ionrwa_energies(const struct IonrwaParams *params,
                                  enum IonrwaKind kind,
                                  int64_t k,
                                  double *out_h11,
                                  double *out_h22);

/**
 * Interaction energy in units of `hbar * Omega`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum IonrwaStatus ionrwa_interaction_energy(const struct IonrwaParams *params,
                                            enum IonrwaKind kind,
                                            double *out_value);

/**
 * # Safety
 * All pointers must be valid.
 */
enum IonrwaStatus ionrwa_cooling_advantage(const struct IonrwaParams *params, double *out_value);

/**
 * Global-phase rate and mixing angle at time `t` for step `k`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum IonrwaStatus ionrwa_angles(const struct IonrwaParams *params,
                                enum IonrwaKind kind,
                                double t,
                                int64_t k,
                                double *out_delta,
                                double *out_theta);

/**
 * Ground-state probability at time `t` for step `k`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum IonrwaStatus ionrwa_ground_probability(const struct IonrwaParams *params,
                                            enum IonrwaKind kind,
                                            double t,
                                            int64_t k,
                                            double *out_value);

/**
 * Ground-state probability evaluated at `t_k`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum IonrwaStatus ionrwa_ground_probability_at_step(const struct IonrwaParams *params,
                                                    enum IonrwaKind kind,
                                                    int64_t k,
                                                    double *out_value);

/**
 * Closed-form concurrence expression at time `t` for step `k`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum IonrwaStatus ionrwa_concurrence_closed_form(const struct IonrwaParams *params,
                                                 enum IonrwaKind kind,
                                                 double t,
                                                 int64_t k,
                                                 double *out_value);

/**
 * Wootters concurrence of a 4x4 density matrix given as row-major real and
 * imaginary parts (16 doubles each) in the basis `{g0, g1, e0, e1}`.
 *
 * # Safety
 * `re` and `im` must point to 16 doubles; `out_value` must be valid.
 */
enum IonrwaStatus ionrwa_wootters(const double *re, const double *im, double *out_value);

/**
 * `2|ad - bc|` for normalized amplitudes given as real and imaginary parts
 * (4 doubles each).
 *
 * # Safety
 * `re` and `im` must point to 4 doubles; `out_value` must be valid.
 */
enum IonrwaStatus ionrwa_pure_concurrence(const double *re, const double *im, double *out_value);

/**
 * Two-qubit density of the evolved state at mixing angle `theta`, written
 * row-major into `out_re` and `out_im` (16 doubles each).
 *
 * # Safety
 * `out_re` and `out_im` must point to writable storage for 16 doubles.
 */
enum IonrwaStatus ionrwa_density_from_state(double theta,
                                            double alpha,
                                            double *out_re,
                                            double *out_im);

/**
 * Builds an oracle on the parameter set's Fock cutoff. Fails with
 * `IONRWA_STATUS_CUTOFF` when the cutoff cannot represent `alpha`.
 *
 * # Safety
 * `params` must be a live handle and `out_oracle` a valid pointer.
 */
enum IonrwaStatus ionrwa_oracle_new(const struct IonrwaParams *params,
                                    struct IonrwaOracle **out_oracle);

/**
 * # Safety
 * `oracle` must come from [`ionrwa_oracle_new`] and not be used afterwards. Null is ignored.
 */
void ionrwa_oracle_free(struct IonrwaOracle *oracle);

/**
 * Normalized off-diagonal element of the projected 2x2 Hamiltonian at `t_k`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum IonrwaStatus ionrwa_oracle_offdiagonal_residual(const struct IonrwaOracle *oracle,
                                                     enum IonrwaKind kind,
                                                     int64_t k,
                                                     double *out_value);

/**
 * Relative deviation of the projected diagonal elements from the closed
 * forms at `t_k` (direct mapping).
 *
 * # Safety
 * All pointers must be valid.
 */
enum IonrwaStatus ionrwa_oracle_diagonal_deviation(const struct IonrwaOracle *oracle,
                                                   enum IonrwaKind kind,
                                                   int64_t k,
                                                   double *out_value);

/**
 * Runs the validation suite for a configuration given as `key = value`
 * text (empty text means defaults). Writes the JSON report to
 * `out_json` (release with [`ionrwa_string_free`]) and whether every hard
 * check passed to `out_all_passed`.
 *
 * # Safety
 * `config_text` must be NUL-terminated; the out-pointers must be valid.
 */
enum IonrwaStatus ionrwa_validate(const char *config_text, char **out_json, bool *out_all_passed);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void ionrwa_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IONRWA_H */
