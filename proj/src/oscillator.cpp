#include "wavetrain/oscillator.hpp"

#include <cmath>
#include <stdexcept>

namespace wavetrain {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double classical_c0(const OscillatorParams& p) {
  return p.A * p.B * p.omega_x * std::sin(p.alpha - p.beta);
}

void validate(const OscillatorParams& p) {
  if (!(p.omega_x > 0.0))
    throw std::invalid_argument("oscillator: omega_x must be positive");
  if (!(classical_c0(p) > 0.0))
    throw std::invalid_argument(
        "oscillator: invalid parameters, A*B*omega_x*sin(alpha-beta) must be > 0");
}

double rho(double t, const OscillatorParams& p) {
  const double u = p.A * std::cos(p.omega_x * t + p.alpha);
  const double v = p.B * std::cos(p.omega_x * t + p.beta);
  return std::sqrt(u * u + v * v);
}

double rho_dot(double t, const OscillatorParams& p) {
  const double ca = std::cos(p.omega_x * t + p.alpha);
  const double sa = std::sin(p.omega_x * t + p.alpha);
  const double cb = std::cos(p.omega_x * t + p.beta);
  const double sb = std::sin(p.omega_x * t + p.beta);
  return -p.omega_x * (p.A * p.A * ca * sa + p.B * p.B * cb * sb) / rho(t, p);
}

double theta(double t, const OscillatorParams& p) {
  validate(p);
  const double re = p.A * std::cos(p.omega_x * t + p.alpha);
  const double im = p.B * std::cos(p.omega_x * t + p.beta);
  const double raw = std::atan2(im, re);

  // theta_dot > 0, so the wrapped angle jumps by -2pi exactly when phi crosses
  // the negative real axis. Those instants are the zeros of Im(phi) at which
  // Re(phi) < 0; count them between 0 and t.
  // Im(phi) = 0 at tau_j = (pi/2 + j*pi - beta) / omega_x.
  long winding = 0;
  if (t != 0.0) {
    const double lo = std::min(0.0, t);
    const double hi = std::max(0.0, t);
    const long j_start = (long)std::ceil((p.omega_x * lo + p.beta - kPi / 2) / kPi);
    for (long j = j_start;; ++j) {
      const double tau = (kPi / 2 + j * kPi - p.beta) / p.omega_x;
      if (tau >= hi) break;
      if (tau <= lo) continue;
      if (p.A * std::cos(p.omega_x * tau + p.alpha) < 0.0) winding += (t > 0.0) ? 1 : -1;
    }
  }
  return raw + 2.0 * kPi * winding;
}

ConservedSet conserved(const OscillatorParams& p) {
  validate(p);
  ConservedSet c;
  c.c0 = classical_c0(p);
  const double r0 = rho(0.0, p);
  const double rd0 = rho_dot(0.0, p);
  c.c1 = 0.5 * (rd0 * rd0 + c.c0 * c.c0 / (r0 * r0) + r0 * r0 * p.omega_x * p.omega_x);
  c.c2 = p.A * p.A * c.c1 / ((p.A * p.A + p.B * p.B) * c.c0);
  return c;
}

double center_orbit(double t, const OscillatorParams& p, double b0) {
  validate(p);
  return b0 / classical_c0(p) * p.A * std::cos(p.omega_x * t + p.alpha);
}

double c2_at_time(double t, const OscillatorParams& p) {
  const ConservedSet c = conserved(p);
  const double r = rho(t, p);
  const double rd = rho_dot(t, p);
  const double th = theta(t, p);
  const double th_dot = c.c0 / (r * r);
  const double ct = std::cos(th);
  const double st = std::sin(th);
  return 0.5 * th_dot + (c.c1 / c.c0 - th_dot) * ct * ct - rd / r * ct * st;
}

RhoExtrema rho_extrema(const OscillatorParams& p) {
  // rho^2 = (A^2+B^2)/2 + Re[(A^2 e^{2i alpha} + B^2 e^{2i beta}) e^{2i w t}] / 2
  const double mean = 0.5 * (p.A * p.A + p.B * p.B);
  const double re = p.A * p.A * std::cos(2 * p.alpha) + p.B * p.B * std::cos(2 * p.beta);
  const double im = p.A * p.A * std::sin(2 * p.alpha) + p.B * p.B * std::sin(2 * p.beta);
  const double amp = 0.5 * std::hypot(re, im);
  return {std::sqrt(std::max(0.0, mean - amp)), std::sqrt(mean + amp)};
}

}  // namespace wavetrain
