#include "wavetrain/packet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wavetrain/special_fn.hpp"

namespace wavetrain {

namespace {
constexpr double kLogPi = 1.1447298858494001741434273513530587116;
using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};
}  // namespace

void validate(const TrainSpec& ts) {
  if (ts.n < 0 || ts.n > 64)
    throw std::invalid_argument("TrainSpec: n must be in [0, 64], got " + std::to_string(ts.n));
  if (!(ts.omega_r >= 0.0)) throw std::invalid_argument("TrainSpec: omega_r must be nonnegative");
}

double xi(double x, double t, const OscillatorParams& p, const TrainSpec& ts) {
  validate(p);
  validate(ts);
  const double c0 = classical_c0(p);
  const double sq = std::sqrt(c0);
  return sq * x / rho(t, p) - ts.b0 / sq * std::cos(theta(t, p));
}

CoefficientState coefficients(double t, const OscillatorParams& p, const TrainSpec& ts) {
  validate(p);
  validate(ts);
  const double c0 = classical_c0(p);
  const double r = rho(t, p);
  const double rd = rho_dot(t, p);
  const double th = theta(t, p);
  const double th_dot = c0 / (r * r);

  CoefficientState s;
  s.b = ts.b0 * std::exp(-kI * th) / r;
  s.c = complexd{0.5 * th_dot, -0.5 * rd / r};
  s.e = std::sqrt(c0) / r;
  s.f = ts.b0 / std::sqrt(c0) * std::cos(th);

  // A0 = [sqrt(c0) / (sqrt(pi) 2^n n!)]^{1/2}, assembled in log space.
  const double log_a0 = 0.25 * std::log(c0) - 0.25 * kLogPi -
                        0.5 * (ts.n * std::log(2.0) + std::lgamma(ts.n + 1.0));
  const double mag = std::exp(log_a0) / std::sqrt(r);
  const double phase =
      -((0.5 + ts.n) * th + ts.omega_r * p.omega_x * t - ts.b0 * ts.b0 / (4.0 * c0) * std::sin(2.0 * th));
  s.a_n = mag * std::exp(kI * phase);
  return s;
}

PolarSample psi_axial_polar(double x, double t, const OscillatorParams& p, const TrainSpec& ts) {
  validate(p);
  validate(ts);
  const double c0 = classical_c0(p);
  const double sq = std::sqrt(c0);
  const double r = rho(t, p);
  const double rd = rho_dot(t, p);
  const double th = theta(t, p);
  const double xi_v = sq * x / r - ts.b0 / sq * std::cos(th);

  PolarSample out;
  out.amplitude = std::sqrt(sq / r) * hermite_function(ts.n, xi_v);
  out.phase = rd * x * x / (2.0 * r) - ts.b0 * x / r * std::sin(th) +
              ts.b0 * ts.b0 / (4.0 * c0) * std::sin(2.0 * th) - (0.5 + ts.n) * th -
              ts.omega_r * p.omega_x * t;
  return out;
}

std::complex<double> psi_axial(double x, double t, const OscillatorParams& p,
                               const TrainSpec& ts) {
  const PolarSample s = psi_axial_polar(x, t, p, ts);
  return s.amplitude * std::exp(kI * s.phase);
}

std::vector<std::complex<double>> psi_axial_grid(const std::vector<double>& xs, double t,
                                                 const OscillatorParams& p,
                                                 const TrainSpec& ts) {
  validate(p);
  validate(ts);
  const double c0 = classical_c0(p);
  const double sq = std::sqrt(c0);
  const double r = rho(t, p);
  const double rd = rho_dot(t, p);
  const double th = theta(t, p);
  const double cth = std::cos(th);
  const double sth = std::sin(th);
  const double amp0 = std::sqrt(sq / r);
  const double phase0 =
      ts.b0 * ts.b0 / (4.0 * c0) * std::sin(2.0 * th) - (0.5 + ts.n) * th -
      ts.omega_r * p.omega_x * t;

  std::vector<std::complex<double>> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double xi_v = sq * x / r - ts.b0 / sq * cth;
    const double amp = amp0 * hermite_function(ts.n, xi_v);
    const double phase = rd * x * x / (2.0 * r) - ts.b0 * x / r * sth + phase0;
    out[i] = amp * std::exp(kI * phase);
  }
  return out;
}

std::complex<double> psi_full(double x, double y, double z, double t,
                              const OscillatorParams& p, const TrainSpec& ts,
                              double lr_ratio) {
  validate(p);
  validate(ts);
  if (!(lr_ratio > 0.0)) throw std::invalid_argument("psi_full: lr_ratio must be positive");
  if (std::abs(lr_ratio * lr_ratio - ts.omega_r) > 1e-9 * std::max(1.0, ts.omega_r))
    throw std::invalid_argument("psi_full: lr_ratio^2 must equal omega_r/omega_x");
  const double lr = 1.0 / lr_ratio;  // in units of l_x
  const double transverse =
      std::exp(-(y * y + z * z) / (2.0 * lr * lr)) / (std::sqrt(3.14159265358979323846) * lr);
  return psi_axial(x, t, p, ts) * transverse;
}

double energy_level(const OscillatorParams& p, const TrainSpec& ts) {
  validate(ts);
  const ConservedSet c = conserved(p);
  return (0.5 + ts.n) * c.c1 / c.c0 + ts.omega_r + ts.b0 * ts.b0 / c.c0 * c.c2;
}

}  // namespace wavetrain
