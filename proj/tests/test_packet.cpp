#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "wavetrain/oscillator.hpp"
#include "wavetrain/packet.hpp"

using namespace wavetrain;
using complexd = std::complex<double>;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr complexd kI{0.0, 1.0};

const OscillatorParams kFig1{1.0, 1.0, 0.0, -kPi / 2, 1.0};
const OscillatorParams kFig2{0.01, 1.0, 0.0, -kPi / 2, 1.0};
const OscillatorParams kFig3{0.4624, 1.0, 0.0, -kPi / 2, 1.0};

double norm_on_grid(const OscillatorParams& p, const TrainSpec& ts, double t, double half_width,
                    int n_pts) {
  const double xc = center_orbit(t, p, ts.b0);
  double acc = 0.0;
  const double h = 2 * half_width / (n_pts - 1);
  for (int i = 0; i < n_pts; ++i) {
    const double x = xc - half_width + i * h;
    acc += std::norm(psi_axial(x, t, p, ts));
  }
  return acc * h;
}
}  // namespace

TEST_CASE("spec validation bounds") {
  CHECK_THROWS_AS(validate(TrainSpec{-1, 0.0, 40.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(TrainSpec{65, 0.0, 40.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(TrainSpec{3, 0.0, -1.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(TrainSpec{64, -5.0, 0.0}));
}

TEST_CASE("xi vanishes at the train center and is linear in x") {
  const TrainSpec ts{10, -5.0, 40.0};
  for (double t : {0.0, 0.9, kPi / 2, 2.8}) {
    const double xc = center_orbit(t, kFig1, ts.b0);
    CHECK(xi(xc, t, kFig1, ts) == doctest::Approx(0.0).scale(1.0));
    const double slope = std::sqrt(classical_c0(kFig1)) / rho(t, kFig1);
    CHECK(xi(xc + 1.0, t, kFig1, ts) == doctest::Approx(slope).epsilon(1e-12));
  }
}

TEST_CASE("ground state without drift is the textbook oscillator ground state") {
  const TrainSpec ts{0, 0.0, 40.0};
  const OscillatorParams p{1.0, 1.0, 0.0, -kPi / 2, 1.0};
  for (double t : {0.0, 0.7, 2.0}) {
    for (double x : {-1.5, 0.0, 0.8}) {
      // rho = 1, theta = t here, so psi = pi^{-1/4} e^{-x^2/2} e^{-i(1/2 + omega_r) t}
      const complexd ref = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x) *
                           std::exp(-kI * (0.5 + 40.0) * t);
      const complexd got = psi_axial(x, t, p, ts);
      CHECK(std::abs(got - ref) < 1e-12);
    }
  }
}

TEST_CASE("unit L2 norm for every figure regime") {
  CHECK(norm_on_grid(kFig1, {10, -5.0, 40.0}, 0.0, 9.0, 20001) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(norm_on_grid(kFig2, {10, 0.0, 40.0}, kPi / 4, 80.0, 40001) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(norm_on_grid(kFig3, {10, -17.437, 40.0}, 1.3, 14.0, 20001) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("polar decomposition reassembles psi and grid evaluation agrees") {
  const TrainSpec ts{6, -17.437, 40.0};
  std::vector<double> xs{-20.0, -3.2, 0.0, 1.7, 18.0};
  for (double t : {0.0, 1.1, 2 * kPi}) {
    const auto grid = psi_axial_grid(xs, t, kFig3, ts);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const PolarSample s = psi_axial_polar(xs[i], t, kFig3, ts);
      const complexd rebuilt = s.amplitude * std::exp(kI * s.phase);
      CHECK(std::abs(rebuilt - psi_axial(xs[i], t, kFig3, ts)) < 1e-13);
      CHECK(std::abs(grid[i] - rebuilt) < 1e-13);
    }
  }
}

TEST_CASE("coefficients satisfy their evolution system under finite differences") {
  const TrainSpec ts{4, -5.0, 40.0};
  const double dt = 1e-6;
  for (const auto& p : {kFig1, kFig3}) {
    for (double t : {0.4, 1.9, 3.3}) {
      const CoefficientState sm = coefficients(t - dt, p, ts);
      const CoefficientState s0 = coefficients(t, p, ts);
      const CoefficientState sp = coefficients(t + dt, p, ts);
      const double w2 = p.omega_x * p.omega_x;

      const complexd b_dot = (sp.b - sm.b) / (2 * dt);
      CHECK(std::abs(kI * b_dot - 2.0 * s0.b * s0.c) < 1e-7);

      const complexd c_dot = (sp.c - sm.c) / (2 * dt);
      CHECK(std::abs(kI * c_dot - (2.0 * s0.c * s0.c - 0.5 * w2)) < 1e-7);

      const double e_dot = (sp.e - sm.e) / (2 * dt);
      CHECK(std::abs(kI * e_dot - (2.0 * s0.c * s0.e - std::pow(s0.e, 3))) < 1e-7);

      const double f_dot = (sp.f - sm.f) / (2 * dt);
      CHECK(std::abs(kI * f_dot - (s0.b * s0.e - s0.e * s0.e * s0.f)) < 1e-7);

      const complexd a_dot = (sp.a_n - sm.a_n) / (2 * dt);
      const complexd rhs = (kI * s0.f * f_dot - 0.5 * s0.b * s0.b + s0.c +
                            ts.omega_r * p.omega_x + double(ts.n) * s0.e * s0.e) *
                           s0.a_n;
      CHECK(std::abs(kI * a_dot - rhs) < 1e-6 * std::abs(s0.a_n));
    }
  }
}

TEST_CASE("wavefunction is invariant under orbit rescaling") {
  // (A, B, b0) -> (sA, sB, sb0) leaves psi unchanged
  const TrainSpec ts{10, -5.0, 40.0};
  for (double s : {0.5, 2.0, 10.0}) {
    OscillatorParams scaled = kFig1;
    scaled.A *= s;
    scaled.B *= s;
    TrainSpec ts_scaled = ts;
    ts_scaled.b0 *= s;
    for (double t : {0.0, 1.3, kPi}) {
      for (double x : {-5.5, -1.0, 0.3, 4.2}) {
        const complexd a = psi_axial(x, t, kFig1, ts);
        const complexd b = psi_axial(x, t, scaled, ts_scaled);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("psi_full separates into axial part and transverse Gaussian") {
  const TrainSpec ts{10, -5.0, 40.0};
  const double lr_ratio = std::sqrt(40.0);
  const double lr = 1.0 / lr_ratio;
  for (double y : {0.0, 0.1, -0.3}) {
    const complexd full = psi_full(1.2, y, 0.05, 0.4, kFig1, ts, lr_ratio);
    const double transverse = std::exp(-(y * y + 0.05 * 0.05) / (2 * lr * lr)) /
                              (std::sqrt(kPi) * lr);
    const complexd expected = psi_axial(1.2, 0.4, kFig1, ts) * transverse;
    CHECK(std::abs(full - expected) < 1e-13);
  }
  CHECK_THROWS_AS((void)psi_full(0, 0, 0, 0, kFig1, ts, 2.0), std::invalid_argument);
}

TEST_CASE("energy levels reproduce the reference values") {
  CHECK(energy_level(kFig1, {10, -5.0, 40.0}) == doctest::Approx(63.0).epsilon(1e-12));
  CHECK(energy_level(kFig2, {10, 0.0, 40.0}) == doctest::Approx(565.0525).epsilon(1e-12));
  CHECK(energy_level(kFig1, {0, 0.0, 40.0}) == doctest::Approx(40.5).epsilon(1e-12));
}

TEST_CASE("energy spacing equals c1/c0 for all n") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(0.2, 2.0);
  for (int rep = 0; rep < 10; ++rep) {
    OscillatorParams p{unif(rng), unif(rng), 0.0, -kPi / 2, 1.0};
    const ConservedSet c = conserved(p);
    const double b0 = -3.0 * unif(rng);
    for (int n = 0; n < 12; ++n) {
      const double gap = energy_level(p, {n + 1, b0, 40.0}) - energy_level(p, {n, b0, 40.0});
      CHECK(gap == doctest::Approx(c.c1 / c.c0).epsilon(1e-12));
    }
  }
}
