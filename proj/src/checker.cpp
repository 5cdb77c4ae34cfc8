#include "wavetrain/checker.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "wavetrain/special_fn.hpp"

namespace wavetrain {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

std::vector<double> grid_coords(const GridSpec& g) {
  std::vector<double> xs(g.points);
  const double h = (g.x_max - g.x_min) / (g.points - 1);
  for (int i = 0; i < g.points; ++i) xs[i] = g.x_min + i * h;
  return xs;
}

complexd sample_psi(double x, double t, const OscillatorParams& p, const TrainSpec& ts,
                    double phase_scale) {
  const PolarSample s = psi_axial_polar(x, t, p, ts);
  return s.amplitude * std::exp(kI * (s.phase * phase_scale));
}

// Stripped sample psi_n(x_i) * exp(xi_i^2 / 2): the Gaussian is cancelled
// against the quadrature weight so nothing underflows.
complexd stripped_sample(int n, double x, double xi_v, double t, const OscillatorParams& p,
                         const TrainSpec& ts) {
  TrainSpec member = ts;
  member.n = n;
  const PolarSample s = psi_axial_polar(x, t, p, member);
  const double c0 = classical_c0(p);
  const double amp = std::sqrt(std::sqrt(c0) / rho(t, p)) * hermite_poly_normalized(n, xi_v);
  return amp * std::exp(kI * s.phase);
}

}  // namespace

ResidualNorms pde_residual(const OscillatorParams& p, const TrainSpec& ts, const GridSpec& grid,
                           const std::vector<double>& times, const ResidualOptions& opt) {
  validate(p);
  validate(ts);
  if (grid.points < 5) throw std::invalid_argument("pde_residual: grid too small");
  const std::vector<double> xs = grid_coords(grid);
  const double h = (grid.x_max - grid.x_min) / (grid.points - 1);
  const double dt = opt.dt_fd;

  double acc_r2 = 0.0, acc_p2 = 0.0, max_r = 0.0, max_p = 0.0;
  for (const double t : times) {
    // five time slices for the 4th-order time derivative
    std::vector<std::vector<complexd>> slice(5);
    for (int k = -2; k <= 2; ++k) {
      auto& s = slice[k + 2];
      s.resize(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i)
        s[i] = sample_psi(xs[i], t + k * dt, p, ts, opt.phase_scale);
    }
    const auto& psi = slice[2];

    const double tail = std::max(std::abs(psi.front()), std::abs(psi.back()));
    if (tail > 1e-12)
      throw std::invalid_argument("pde_residual: boundary decay violated, |psi| at edge = " +
                                  std::to_string(tail));

    for (std::size_t i = 2; i + 2 < xs.size(); ++i) {
      const complexd psi_t =
          (-slice[4][i] + 8.0 * slice[3][i] - 8.0 * slice[1][i] + slice[0][i]) / (12.0 * dt);
      const complexd psi_xx = (-psi[i + 2] + 16.0 * psi[i + 1] - 30.0 * psi[i] +
                               16.0 * psi[i - 1] - psi[i - 2]) /
                              (12.0 * h * h);
      const double V = 0.5 * p.omega_x * p.omega_x * xs[i] * xs[i] + ts.omega_r * p.omega_x;
      const complexd r = kI * psi_t + 0.5 * psi_xx - V * psi[i];
      acc_r2 += std::norm(r);
      acc_p2 += std::norm(psi[i]);
      max_r = std::max(max_r, std::abs(r));
      max_p = std::max(max_p, std::abs(psi[i]));
    }
  }
  if (acc_p2 == 0.0) throw std::invalid_argument("pde_residual: wavefunction vanishes on grid");
  return {std::sqrt(acc_r2 / acc_p2), max_r / max_p};
}

std::vector<std::vector<complexd>> gram_matrix(const OscillatorParams& p, int n_max, double t,
                                               double b0, double omega_r, int quad_order) {
  validate(p);
  if (n_max < 0 || n_max > 16) throw std::invalid_argument("gram_matrix: n_max must be <= 16");
  const QuadratureRule rule = gauss_hermite(quad_order);
  const double c0 = classical_c0(p);
  const double r = rho(t, p);
  const double th = theta(t, p);
  const double scale = r / std::sqrt(c0);  // dx/dxi
  const double shift = b0 / std::sqrt(c0) * std::cos(th);
  TrainSpec ts{0, b0, omega_r};

  const int dim = n_max + 1;
  std::vector<std::vector<complexd>> hat(dim, std::vector<complexd>(rule.order));
  for (int n = 0; n < dim; ++n)
    for (int i = 0; i < rule.order; ++i) {
      const double xi_v = rule.nodes[i];
      const double x = scale * (xi_v + shift);
      hat[n][i] = stripped_sample(n, x, xi_v, t, p, ts);
    }

  std::vector<std::vector<complexd>> G(dim, std::vector<complexd>(dim));
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m) {
      complexd acc{0.0, 0.0};
      for (int i = 0; i < rule.order; ++i)
        acc += rule.weights[i] * std::conj(hat[n][i]) * hat[m][i];
      G[n][m] = acc * scale;
    }
  return G;
}

LadderIntegrals ladder_integrals(const OscillatorParams& p, const TrainSpec& ts, double t,
                                 int quad_order) {
  validate(p);
  validate(ts);
  const QuadratureRule rule = gauss_hermite(quad_order);
  const double c0 = classical_c0(p);
  const double r = rho(t, p);
  const double th = theta(t, p);
  const double scale = r / std::sqrt(c0);
  const double shift = ts.b0 / std::sqrt(c0) * std::cos(th);

  auto inner = [&](int bra, int ket) {
    complexd acc{0.0, 0.0};
    for (int i = 0; i < rule.order; ++i) {
      const double xi_v = rule.nodes[i];
      const double x = scale * (xi_v + shift);
      acc += rule.weights[i] * std::conj(stripped_sample(bra, x, xi_v, t, p, ts)) * xi_v *
             stripped_sample(ket, x, xi_v, t, p, ts);
    }
    return acc * scale;
  };

  LadderIntegrals out;
  out.lower = (ts.n >= 1) ? inner(ts.n - 1, ts.n) : complexd{0.0, 0.0};
  out.raise = inner(ts.n + 1, ts.n);
  return out;
}

double energy_expectation(const OscillatorParams& p, const TrainSpec& ts, double t,
                          const GridSpec& grid) {
  validate(p);
  validate(ts);
  const std::vector<double> xs = grid_coords(grid);
  const double h = (grid.x_max - grid.x_min) / (grid.points - 1);
  const std::vector<complexd> psi = psi_axial_grid(xs, t, p, ts);

  const double tail = std::max(std::abs(psi.front()), std::abs(psi.back()));
  if (tail > 1e-12)
    throw std::invalid_argument("energy_expectation: boundary decay violated, |psi| at edge = " +
                                std::to_string(tail));

  double acc = 0.0;
  for (std::size_t i = 2; i + 2 < xs.size(); ++i) {
    const complexd dpsi =
        (psi[i - 2] - 8.0 * psi[i - 1] + 8.0 * psi[i + 1] - psi[i + 2]) / (12.0 * h);
    const double V = 0.5 * p.omega_x * p.omega_x * xs[i] * xs[i] + ts.omega_r * p.omega_x;
    acc += 0.5 * std::norm(dpsi) + V * std::norm(psi[i]);
  }
  return acc * h;
}

double energy_quadrature(const OscillatorParams& p, const TrainSpec& ts, double t,
                         int quad_order) {
  validate(p);
  validate(ts);
  if (quad_order <= 0) quad_order = std::max(48, ts.n + 8);
  const QuadratureRule rule = gauss_hermite(quad_order);
  const double c0 = classical_c0(p);
  const double r = rho(t, p);
  const double rd = rho_dot(t, p);
  const double th = theta(t, p);
  const double scale = r / std::sqrt(c0);
  const double shift = ts.b0 / std::sqrt(c0) * std::cos(th);
  const int n = ts.n;

  // |psi|^2 = (sqrt(c0)/rho) p_n(xi)^2 e^{-xi^2}; the amplitude derivative uses
  // the ladder identity for the Hermite-function derivative.
  double acc = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double xi_v = rule.nodes[i];
    const double x = scale * (xi_v + shift);
    const double pn = hermite_poly_normalized(n, xi_v);
    const double q = std::sqrt(n / 2.0) * ((n >= 1) ? hermite_poly_normalized(n - 1, xi_v) : 0.0) -
                     std::sqrt((n + 1) / 2.0) * hermite_poly_normalized(n + 1, xi_v);
    const double phase_grad = rd * x / r - ts.b0 / r * std::sin(th);
    const double V = 0.5 * p.omega_x * p.omega_x * x * x + ts.omega_r * p.omega_x;
    acc += rule.weights[i] *
           (0.5 * (c0 / (r * r)) * q * q + (0.5 * phase_grad * phase_grad + V) * pn * pn);
  }
  return acc;
}

GridSpec adapted_grid(const OscillatorParams& p, const TrainSpec& ts, double t, int points) {
  const double c0 = classical_c0(p);
  const double w = rho(t, p) / std::sqrt(c0);
  const double cutoff = hermite_tail_cutoff(ts.n, 1e-14) + 0.3;
  const double xc = center_orbit(t, p, ts.b0);
  return {xc - cutoff * w, xc + cutoff * w, points};
}

std::vector<double> resolvable_times(const OscillatorParams& p, const TrainSpec& ts, int count) {
  validate(p);
  validate(ts);
  const double c0 = classical_c0(p);
  const double period = 2.0 * kPi / p.omega_x;
  const double cutoff = hermite_tail_cutoff(ts.n, 1e-14) + 0.3;
  const int steps = 2000;

  // Difficulty score: estimated 4th-order stencil error at 4096 points on the
  // adapted grid, driven by the boost and chirp wavenumbers.
  auto score = [&](double t) {
    const double r = rho(t, p);
    const double rd = rho_dot(t, p);
    const double th = theta(t, p);
    const double w = r / std::sqrt(c0);
    const double h = 2.0 * cutoff * w / 4096.0;
    const double k_h = std::sqrt(2.0 * ts.n + 1.0) / w;
    const double k_boost = std::abs(ts.b0 * std::sin(th)) / r;
    const double k_chirp =
        std::abs(rd / r) * (std::abs(center_orbit(t, p, ts.b0)) + cutoff * w);
    const double k = k_h + k_boost + k_chirp;
    const double hk = h * k;
    return hk * hk * hk * hk * k * k;
  };

  std::vector<std::pair<double, double>> scored;
  scored.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double t = period * i / steps;
    scored.emplace_back(score(t), t);
  }
  std::sort(scored.begin(), scored.end());

  std::vector<double> picked;
  const double min_sep = period / 50.0;
  const double score_cap = 1000.0 * scored.front().first;  // hopeless times stay out
  for (const auto& [s, t] : scored) {
    if (s > score_cap) break;
    bool near = false;
    for (double u : picked)
      if (std::abs(u - t) < min_sep) near = true;
    if (!near) picked.push_back(t);
    if ((int)picked.size() == count) break;
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

VerificationReport full_report(const OscillatorParams& p, const TrainSpec& ts,
                               const ReportConfig& cfg) {
  validate(p);
  validate(ts);
  VerificationReport rep;
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * kPi / p.omega_x);
  const ConservedSet cons = conserved(p);

  // PDE residual at resolvable times, each with its own adapted grid. The
  // time-difference step shrinks with the phase frequency (roughly E_n).
  ResidualOptions ropt;
  ropt.dt_fd = std::min(1e-5, 2e-3 / std::max(1.0, energy_level(p, ts)));
  for (const double t : resolvable_times(p, ts, 3)) {
    const ResidualNorms r = pde_residual(p, ts, adapted_grid(p, ts, t), {t}, ropt);
    rep.residual_l2 = std::max(rep.residual_l2, r.l2);
    rep.residual_max = std::max(rep.residual_max, r.max);
  }

  // Orthonormality at two random times, plus time independence.
  const double tg1 = unif(rng), tg2 = unif(rng);
  const auto G1 = gram_matrix(p, cfg.gram_n_max, tg1, ts.b0, ts.omega_r);
  const auto G2 = gram_matrix(p, cfg.gram_n_max, tg2, ts.b0, ts.omega_r);
  double gram_drift = 0.0;
  for (std::size_t n = 0; n < G1.size(); ++n)
    for (std::size_t m = 0; m < G1.size(); ++m) {
      const double dev = std::abs(G1[n][m] - ((n == m) ? 1.0 : 0.0));
      if (n == m)
        rep.gram_max_diag_err = std::max(rep.gram_max_diag_err, dev);
      else
        rep.gram_max_offdiag = std::max(rep.gram_max_offdiag, dev);
      gram_drift = std::max(gram_drift, std::abs(G1[n][m] - G2[n][m]));
    }
  rep.details["gram_time_drift"] = gram_drift;

  // Ladder moduli at a random time.
  if (ts.n >= 1) {
    const double tl = unif(rng);
    const LadderIntegrals lad = ladder_integrals(p, ts, tl);
    rep.details["ladder_lower_err"] = std::abs(std::abs(lad.lower) - std::sqrt(ts.n / 2.0));
    rep.details["ladder_raise_err"] =
        std::abs(std::abs(lad.raise) - std::sqrt((ts.n + 1) / 2.0));
    rep.details["ladder_lower_phase"] = std::arg(lad.lower);
    rep.details["ladder_raise_phase"] = std::arg(lad.raise);
  }

  // Energy: grid quadrature vs closed form at one resolvable time, then
  // time-constancy via the exact quadrature path at random times.
  rep.energy_closed_form = energy_level(p, ts);
  const std::vector<double> et = resolvable_times(p, ts, cfg.energy_times);
  rep.energy_numeric = energy_expectation(p, ts, et.front(), adapted_grid(p, ts, et.front()));
  double e_min = 0.0, e_max = 0.0;
  for (int i = 0; i < cfg.energy_times; ++i) {
    const double e = energy_quadrature(p, ts, unif(rng));
    if (i == 0) e_min = e_max = e;
    e_min = std::min(e_min, e);
    e_max = std::max(e_max, e);
  }
  rep.energy_drift = e_max - e_min;
  rep.details["energy_rel_err"] =
      std::abs(rep.energy_numeric - rep.energy_closed_form) / std::abs(rep.energy_closed_form);

  // Classical oscillator identities at random times.
  double c0_dev = 0.0, c1_dev = 0.0, c2_dev = 0.0;
  const double fd = 1e-4;  // roundoff in theta differences dominates below this
  for (int i = 0; i < 100; ++i) {
    const double t = unif(rng);
    const double r = rho(t, p);
    const double th_dot =
        (theta(t - 2 * fd, p) - 8 * theta(t - fd, p) + 8 * theta(t + fd, p) -
         theta(t + 2 * fd, p)) /
        (12 * fd);
    c0_dev = std::max(c0_dev, std::abs(r * r * th_dot - cons.c0));
    const double rd = rho_dot(t, p);
    const double c1_t =
        0.5 * (rd * rd + cons.c0 * cons.c0 / (r * r) + r * r * p.omega_x * p.omega_x);
    c1_dev = std::max(c1_dev, std::abs(c1_t - cons.c1));
    if (i < 20) c2_dev = std::max(c2_dev, std::abs(c2_at_time(t, p) - cons.c2));
  }
  rep.details["c0_identity_dev"] = c0_dev;
  rep.details["c1_identity_dev"] = c1_dev;
  rep.details["c2_identity_dev"] = c2_dev;
  return rep;
}

}  // namespace wavetrain
