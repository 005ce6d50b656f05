#ifndef QNDPOL_H
#define QNDPOL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QndCavityKind {
  QND_CAVITY_KIND_SINGLE_SIDED = 0,
  QND_CAVITY_KIND_TWO_SIDED = 1,
} QndCavityKind;

typedef enum QndSignal {
  QND_SIGNAL_PHASE = 0,
  QND_SIGNAL_INTENSITY = 1,
} QndSignal;

// Status codes returned by every fallible function.
typedef enum QndStatus {
  QND_STATUS_OK = 0,
  QND_STATUS_NULL_POINTER = 1,
  QND_STATUS_INVALID_INPUT = 2,
  QND_STATUS_DOMAIN = 3,
  QND_STATUS_NO_CONVERGENCE = 4,
  QND_STATUS_UNMEASURABLE = 5,
  QND_STATUS_INTERNAL = 6,
} QndStatus;

// Opaque cavity handle.
typedef struct QndCavity QndCavity;

// Reflected field components for a unit H-polarized drive.
typedef struct QndResponse {
  double f_h_re;
  double f_h_im;
  double f_v_re;
  double f_v_im;
  double f_plus_re;
  double f_plus_im;
  double f_minus_re;
  double f_minus_im;
  // Steady-state polaritons per unit cavity flux (ps).
  double polaritons_per_flux;
} QndResponse;

// One error-budget row; probabilities are fractions, not percent.
typedef struct QndBudget {
  double tau_meas_ns;
  double p_sn;
  double p_dark;
  double p_rad;
  double p_total;
  double operating_delta_mev;
  double i_d1_per_ps;
  double i_d2_per_ps;
} QndBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length, 0 if none.
//
// # Safety
// `buf` must be valid for `len` bytes or null.
size_t qnd_last_error(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *qnd_version(void);

// Create a cavity. `spin` is +1 or −1 (electron spin ±½). Energies in meV.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
enum QndStatus qnd_cavity_new(double gamma1,
                              double gamma2,
                              double v_s,
                              double v_ex,
                              int32_t spin,
                              struct QndCavity **out);

// Release a handle from [`qnd_cavity_new`]; null is ignored.
//
// # Safety
// `h` must come from `qnd_cavity_new` and not be used afterwards.
void qnd_cavity_free(struct QndCavity *h);

// Steady-state reflection at probe detuning `delta` (meV).
//
// # Safety
// `h` and `out` must be valid.
enum QndStatus qnd_cavity_response(const struct QndCavity *h,
                                   double delta,
                                   struct QndResponse *out);

// Detector difference signal per unit input flux.
//
// # Safety
// `h` and `out` must be valid.
enum QndStatus qnd_cavity_signal(const struct QndCavity *h,
                                 double delta,
                                 enum QndSignal kind,
                                 double *out);

// Detuning of the largest |signal| in [−3γ, 3γ]. Returns `Unmeasurable` when
// the signal vanishes identically.
//
// # Safety
// All pointers must be valid.
enum QndStatus qnd_cavity_optimal_detuning(const struct QndCavity *h,
                                           enum QndSignal kind,
                                           double *delta,
                                           double *signal);

// erfc(|n1 − n2|/√(2(n1 + n2))).
//
// # Safety
// `out` must be valid.
enum QndStatus qnd_shot_noise_error(double n1, double n2, double *out);

// Measurement time (ns) for detector fluxes in ps⁻¹ and a target error.
//
// # Safety
// `out` must be valid.
enum QndStatus qnd_required_measurement_time(double i_d1, double i_d2, double target, double *out);

// Error budget with default parameters (γ = 1 meV, V_ex = 0.2 µeV, N = 2000).
//
// # Safety
// `out` must be valid.
enum QndStatus qnd_budget_default(enum QndCavityKind cavity,
                                  enum QndSignal kind,
                                  double v_s,
                                  struct QndBudget *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QNDPOL_H */
