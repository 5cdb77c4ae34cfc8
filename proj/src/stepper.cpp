#include "wavetrain/stepper.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace wavetrain {

namespace {
constexpr long double kPi = 3.141592653589793238462643383279502884L;
using complexd = std::complex<double>;
using complexl = std::complex<long double>;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// RAII wrapper around a pair of in-place long-double FFTW plans. Extended
// precision keeps the cumulative norm bias of ~1e5 FFT round trips below 1e-14.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(int n) : n_(n) {
    buf_ = static_cast<fftwl_complex*>(fftwl_malloc(sizeof(fftwl_complex) * n));
    if (!buf_) throw std::bad_alloc();
    fwd_ = fftwl_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftwl_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~SpectralWorkspace() {
    fftwl_destroy_plan(fwd_);
    fftwl_destroy_plan(bwd_);
    fftwl_free(buf_);
  }
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  complexl* data() { return reinterpret_cast<complexl*>(buf_); }
  void forward() { fftwl_execute(fwd_); }
  void backward() {
    fftwl_execute(bwd_);
    complexl* d = data();
    const long double s = 1.0L / n_;
    for (int i = 0; i < n_; ++i) d[i] *= s;
  }

 private:
  int n_;
  fftwl_complex* buf_;
  fftwl_plan fwd_, bwd_;
};

double tail_mass(const complexl* psi, int n, double h) {
  const int edge = std::max(2, n / 32);
  long double acc = 0.0L;
  for (int i = 0; i < edge; ++i) acc += std::norm(psi[i]) + std::norm(psi[n - 1 - i]);
  return static_cast<double>(acc) * h;
}

}  // namespace

void validate(const StepperConfig& cfg) {
  if (!is_power_of_two(cfg.points))
    throw std::invalid_argument("stepper: points must be a power of two");
  if (!(cfg.x_max > cfg.x_min)) throw std::invalid_argument("stepper: empty domain");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("stepper: dt must be positive");
  if (cfg.steps < 1) throw std::invalid_argument("stepper: steps must be positive");
}

ComplexField propagate(const ComplexField& initial, const StepperConfig& cfg) {
  validate(cfg);
  initial.check_consistent();
  if (initial.x.count != cfg.points ||
      std::abs(initial.x.min - cfg.x_min) > 1e-12 ||
      std::abs(initial.x.max - cfg.x_max) > 1e-12)
    throw std::invalid_argument("stepper: config grid does not match the initial field");

  const int n = cfg.points;
  // Periodic convention: spectral period is h*n, one step past x_max.
  const double h = initial.x.spacing();

  double peak = 0.0;
  for (const auto& v : initial.values) peak = std::max(peak, std::abs(v));
  const double edge0 = std::max(std::abs(initial.values.front()), std::abs(initial.values.back()));
  if (edge0 > 1e-12 * std::max(1.0, peak))
    throw std::invalid_argument("stepper: initial data does not decay at the boundary");

  const long double dt = cfg.dt;
  std::vector<long double> V(n);
  std::vector<complexl> kin_phase(n), pot_half(n);
  double v_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const long double x = initial.x.coord(i);
    V[i] = 0.5L * cfg.omega_x * cfg.omega_x * x * x + cfg.omega_r;
    v_max = std::max(v_max, std::abs(static_cast<double>(V[i])));
    const int j = (i <= n / 2 - 1) ? i : i - n;  // FFT frequency ordering
    const long double k = 2.0L * kPi * j / (static_cast<long double>(h) * n);
    kin_phase[i] = std::exp(complexl(0.0L, -0.5L * k * k * dt));
    pot_half[i] = std::exp(complexl(0.0L, -0.5L * dt * V[i]));
  }
  if (cfg.dt * v_max > 0.5)
    std::fprintf(stderr, "stepper: warning, dt*max|V| = %.3g exceeds 0.5\n", cfg.dt * v_max);

  SpectralWorkspace ws(n);
  complexl* psi = ws.data();
  for (int i = 0; i < n; ++i) psi[i] = complexl(initial.values[i]);
  const bool linear = cfg.g1d == 0.0;

  for (int step = 0; step < cfg.steps; ++step) {
    for (int i = 0; i < n; ++i) {
      psi[i] *= linear ? pot_half[i]
                       : std::exp(complexl(0.0L, -0.5L * dt * (V[i] + cfg.g1d * std::norm(psi[i]))));
    }
    ws.forward();
    for (int i = 0; i < n; ++i) psi[i] *= kin_phase[i];
    ws.backward();
    for (int i = 0; i < n; ++i) {
      psi[i] *= linear ? pot_half[i]
                       : std::exp(complexl(0.0L, -0.5L * dt * (V[i] + cfg.g1d * std::norm(psi[i]))));
    }

    if (step % 64 == 63 || step == cfg.steps - 1) {
      if (tail_mass(psi, n, h) > 1e-9)
        throw std::runtime_error("stepper: tail mass exceeded 1e-9 at step " +
                                 std::to_string(step) + ", wrap-around imminent");
    }
  }

  ComplexField out;
  out.x = initial.x;
  out.units = initial.units;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = static_cast<complexd>(psi[i]);
  return out;
}

std::vector<std::pair<double, double>> deviation_curve(const OscillatorParams& p,
                                                       const TrainSpec& ts,
                                                       const StepperConfig& cfg, int samples) {
  validate(cfg);
  validate(p);
  validate(ts);
  if (samples < 1 || cfg.steps % samples != 0)
    throw std::invalid_argument("deviation_curve: steps must be divisible by samples");

  const double h = (cfg.x_max - cfg.x_min) / (cfg.points - 1);
  const double sigma_min = rho_extrema(p).min / std::sqrt(classical_c0(p));
  if (h > sigma_min / 8.0)
    throw std::invalid_argument(
        "deviation_curve: grid spacing " + std::to_string(h) +
        " does not resolve the narrowest packet width " + std::to_string(sigma_min));

  ComplexField state;
  state.x = {cfg.x_min, cfg.x_max, cfg.points};
  std::vector<double> xs(cfg.points);
  for (int i = 0; i < cfg.points; ++i) xs[i] = state.x.coord(i);
  state.values = psi_axial_grid(xs, 0.0, p, ts);

  StepperConfig chunk = cfg;
  chunk.steps = cfg.steps / samples;

  std::vector<std::pair<double, double>> curve;
  curve.reserve(samples);
  for (int s = 1; s <= samples; ++s) {
    state = propagate(state, chunk);
    const double t = cfg.dt * chunk.steps * s;
    const std::vector<complexd> exact = psi_axial_grid(xs, t, p, ts);
    double acc = 0.0;
    for (int i = 0; i < cfg.points; ++i) acc += std::norm(state.values[i] - exact[i]);
    curve.emplace_back(t, std::sqrt(acc * h));
  }
  return curve;
}

double interaction_ratio(double n_atoms, double a_scatter, double lr, double lx) {
  if (!(lr > 0.0) || !(lx > 0.0))
    throw std::invalid_argument("interaction_ratio: lengths must be positive");
  return n_atoms * std::abs(a_scatter) / std::cbrt(lr * lr * lx);
}

}  // namespace wavetrain
