#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wavetrain/oscillator.hpp"

namespace wavetrain {

// Experimental observables to invert: center oscillation amplitude and the
// min/max average packet width rho/sqrt(c0). In physical mode all three are in
// microns and the axial length is recovered from the width product.
struct FitConstraints {
  double amplitude = 0.0;
  double width_min = 1.0;
  double width_max = 1.0;
  std::optional<double> omega_x_si;
  double omega_r_ratio = 40.0;
  bool physical = false;
};

void validate(const FitConstraints& c);

// Extra observation for the least-squares path: kind is "width" or "center".
struct Observation {
  double t = 0.0;
  std::string kind;
  double value = 0.0;
};

struct FitResult {
  OscillatorParams params;
  double b0 = 0.0;
  std::optional<double> lx_microns;
  std::map<std::string, double> residuals;
  bool converged = false;
};

// Direct inversion in the gauge B = 1, alpha = 0, beta = -pi/2:
// A = width_min^2, c0 = A, b0 = -amplitude. Requires width_min*width_max = 1
// within 5% (after pulling out l_x in physical mode); throws otherwise.
FitResult fit_closed_form(const FitConstraints& c);

// Nelder-Mead over (A, alpha, beta, b0) with B fixed to 1, minimizing squared
// residuals of the constraints plus any extra observations. Deterministic.
FitResult fit_least_squares(const FitConstraints& c,
                            const std::vector<Observation>& extra = {});

// Model observables used by both fit routes.
double model_width_min(const OscillatorParams& p);
double model_width_max(const OscillatorParams& p);
double model_amplitude(const OscillatorParams& p, double b0);

}  // namespace wavetrain
