#pragma once

namespace wavetrain {

// Classical complex oscillator phi = rho(t) exp(i theta(t)) behind every
// wave-packet train. Natural units: the axial frequency defaults to 1 and
// lengths are measured in the axial oscillator length.
struct OscillatorParams {
  double A = 1.0;
  double B = 1.0;
  double alpha = 0.0;
  double beta = -1.5707963267948966;
  double omega_x = 1.0;
};

struct ConservedSet {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

// A B omega_x sin(alpha - beta); must be positive for a valid parameter set.
double classical_c0(const OscillatorParams& p);

// Throws std::invalid_argument when omega_x <= 0 or c0 <= 0.
void validate(const OscillatorParams& p);

// sqrt(A^2 cos^2(w t + alpha) + B^2 cos^2(w t + beta)); period pi/omega_x.
double rho(double t, const OscillatorParams& p);

// Analytic d rho / dt.
double rho_dot(double t, const OscillatorParams& p);

// Continuous (unwrapped) phase with theta(0) = atan2(B cos beta, A cos alpha).
// Strictly increasing since theta_dot = c0 / rho^2 > 0.
double theta(double t, const OscillatorParams& p);

ConservedSet conserved(const OscillatorParams& p);

// Center of the packet train: (b0/c0) A cos(omega_x t + alpha).
double center_orbit(double t, const OscillatorParams& p, double b0);

// The time-dependent expression whose constancy defines c2:
//   theta_dot/2 + (c1/c0 - theta_dot) cos^2 theta - (rho_dot/rho) cos theta sin theta.
double c2_at_time(double t, const OscillatorParams& p);

// Global min/max of rho(t) over a period, in closed form.
struct RhoExtrema {
  double min = 0.0;
  double max = 0.0;
};
RhoExtrema rho_extrema(const OscillatorParams& p);

}  // namespace wavetrain
