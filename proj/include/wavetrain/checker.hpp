#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "wavetrain/oscillator.hpp"
#include "wavetrain/packet.hpp"

namespace wavetrain {

struct GridSpec {
  double x_min = -15.0;
  double x_max = 15.0;
  int points = 4096;
};

struct ResidualNorms {
  double l2 = 0.0;
  double max = 0.0;
};

struct ResidualOptions {
  double dt_fd = 1e-5;        // central-difference step for the time derivative
  double phase_scale = 1.0;   // != 1 corrupts the phase (negative-control hook)
};

// Residual of i psi_t + psi_xx/2 - (omega_x^2 x^2/2 + omega_r) psi with 4th-order
// central differences in x (stencil step = grid spacing) and t. Norms are
// relative to ||psi||. Throws when |psi| at the grid edges exceeds 1e-12.
ResidualNorms pde_residual(const OscillatorParams& p, const TrainSpec& ts, const GridSpec& grid,
                           const std::vector<double>& times, const ResidualOptions& opt = {});

// Gram matrix G_nm = <psi_n | psi_m>, n, m <= n_max, by Gauss-Hermite quadrature
// in the co-moving coordinate. b0/omega_r are shared across the family.
std::vector<std::vector<std::complex<double>>> gram_matrix(const OscillatorParams& p,
                                                           int n_max, double t,
                                                           double b0 = 0.0,
                                                           double omega_r = 0.0,
                                                           int quad_order = 64);

struct LadderIntegrals {
  std::complex<double> lower;  // <psi_{n-1} | xi | psi_n>
  std::complex<double> raise;  // <psi_{n+1} | xi | psi_n>
};

LadderIntegrals ladder_integrals(const OscillatorParams& p, const TrainSpec& ts, double t,
                                 int quad_order = 64);

// <H> = integral of |psi_x|^2/2 + (omega_x^2 x^2/2 + omega_r)|psi|^2, in hbar omega_x.
double energy_expectation(const OscillatorParams& p, const TrainSpec& ts, double t,
                          const GridSpec& grid);

// Same integral by Gauss-Hermite quadrature with the analytic spatial
// derivative; exact up to rounding since the integrand is polynomial times
// the quadrature weight. Used for tight time-constancy checks.
double energy_quadrature(const OscillatorParams& p, const TrainSpec& ts, double t,
                         int quad_order = 0);

// Grid centered on the train at time t, wide enough that the tails fall below
// 1e-13 of peak.
GridSpec adapted_grid(const OscillatorParams& p, const TrainSpec& ts, double t,
                      int points = 4096);

// Times within one period where the phase gradients (boost and chirp) are mild
// enough that a 4096-point grid resolves the state. Deterministic.
std::vector<double> resolvable_times(const OscillatorParams& p, const TrainSpec& ts,
                                     int count = 3);

struct VerificationReport {
  double residual_l2 = 0.0;
  double residual_max = 0.0;
  double gram_max_offdiag = 0.0;
  double gram_max_diag_err = 0.0;
  double energy_numeric = 0.0;
  double energy_closed_form = 0.0;
  double energy_drift = 0.0;
  std::map<std::string, double> details;
};

struct ReportConfig {
  unsigned seed = 12345;
  int gram_n_max = 8;
  int energy_times = 3;
};

VerificationReport full_report(const OscillatorParams& p, const TrainSpec& ts,
                               const ReportConfig& cfg = {});

}  // namespace wavetrain
