#pragma once

#include <utility>
#include <vector>

#include "wavetrain/field.hpp"
#include "wavetrain/oscillator.hpp"
#include "wavetrain/packet.hpp"

namespace wavetrain {

// Strang split-step spectral propagator for
//   i psi_t = -psi_xx/2 + (omega_x^2 x^2/2 + omega_r + g1d |psi|^2) psi.
// Periodic kinetic step; a tail-mass guard rejects wrap-around.
struct StepperConfig {
  double x_min = -15.0;
  double x_max = 15.0;
  int points = 4096;  // power of two
  double dt = 1e-4;
  int steps = 1;
  double g1d = 0.0;
  double omega_r = 0.0;
  double omega_x = 1.0;
};

void validate(const StepperConfig& cfg);

// Evolves `initial` by cfg.steps steps of size cfg.dt and returns the final
// slice. Norm is preserved to machine precision for any g1d.
ComplexField propagate(const ComplexField& initial, const StepperConfig& cfg);

// Starts from the closed-form state at t = 0, propagates with cfg, and records
// the L2 distance to the closed form at `samples` evenly spaced times.
// cfg.steps must be divisible by samples.
std::vector<std::pair<double, double>> deviation_curve(const OscillatorParams& p,
                                                       const TrainSpec& ts,
                                                       const StepperConfig& cfg,
                                                       int samples = 16);

// N |a| / (l_r^2 l_x)^{1/3}: the interaction-to-kinetic energy ratio diagnostic.
double interaction_ratio(double n_atoms, double a_scatter, double lr, double lx);

}  // namespace wavetrain
