#pragma once

#include <complex>
#include <vector>

#include "wavetrain/oscillator.hpp"

namespace wavetrain {

// Selects one exact train solution: quantum number, drift constant, transverse
// frequency in units of omega_x.
struct TrainSpec {
  int n = 0;
  double b0 = 0.0;
  double omega_r = 40.0;
};

void validate(const TrainSpec& ts);

// Ansatz coefficients at a fixed time.
struct CoefficientState {
  std::complex<double> b;
  std::complex<double> c;
  double e = 0.0;
  double f = 0.0;
  std::complex<double> a_n;
};

// Breathing/co-moving coordinate: sqrt(c0) x / rho - (b0/sqrt(c0)) cos theta.
// Vanishes exactly at the train center.
double xi(double x, double t, const OscillatorParams& p, const TrainSpec& ts);

CoefficientState coefficients(double t, const OscillatorParams& p, const TrainSpec& ts);

// Axial wavefunction psi_n(x, t), unit L2 norm, overflow-safe for n <= 64.
std::complex<double> psi_axial(double x, double t, const OscillatorParams& p,
                               const TrainSpec& ts);

// Amplitude (signed) and phase of psi_axial separately; psi = amp * exp(i phase).
struct PolarSample {
  double amplitude = 0.0;
  double phase = 0.0;
};
PolarSample psi_axial_polar(double x, double t, const OscillatorParams& p,
                            const TrainSpec& ts);

// Batch evaluation along x at a fixed time (rho/theta computed once).
std::vector<std::complex<double>> psi_axial_grid(const std::vector<double>& xs, double t,
                                                 const OscillatorParams& p,
                                                 const TrainSpec& ts);

// Full 3D solution with the transverse ground-state Gaussian. lr_ratio = l_x/l_r
// must satisfy lr_ratio^2 = omega_r/omega_x.
std::complex<double> psi_full(double x, double y, double z, double t,
                              const OscillatorParams& p, const TrainSpec& ts,
                              double lr_ratio);

// Average energy E_n = (1/2 + n) c1/c0 + omega_r + (b0^2/c0) c2, in hbar omega_x.
double energy_level(const OscillatorParams& p, const TrainSpec& ts);

}  // namespace wavetrain
