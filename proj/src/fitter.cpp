#include "wavetrain/fitter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace wavetrain {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kResidualTol = 1e-6;

FitConstraints to_natural(const FitConstraints& c, std::optional<double>& lx_out) {
  if (!c.physical) return c;
  const double lx = std::sqrt(c.width_min * c.width_max);
  lx_out = lx;
  FitConstraints n = c;
  n.physical = false;
  n.amplitude = c.amplitude / lx;
  n.width_min = c.width_min / lx;
  n.width_max = c.width_max / lx;
  return n;
}

std::map<std::string, double> residual_map(const OscillatorParams& p, double b0,
                                           const FitConstraints& c,
                                           const std::vector<Observation>& extra) {
  std::map<std::string, double> r;
  r["width_min"] = std::abs(model_width_min(p) - c.width_min);
  r["width_max"] = std::abs(model_width_max(p) - c.width_max);
  r["amplitude"] = std::abs(model_amplitude(p, b0) - c.amplitude);
  const double c0 = classical_c0(p);
  for (std::size_t i = 0; i < extra.size(); ++i) {
    const Observation& o = extra[i];
    double model = 0.0;
    if (o.kind == "width")
      model = rho(o.t, p) / std::sqrt(c0);
    else if (o.kind == "center")
      model = center_orbit(o.t, p, b0);
    else
      throw std::invalid_argument("fitter: unknown observable kind '" + o.kind + "'");
    r["obs_" + std::to_string(i)] = std::abs(model - o.value);
  }
  return r;
}

// Compact deterministic Nelder-Mead.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step, int max_iter) {
  const std::size_t dim = x0.size();
  std::vector<std::vector<double>> simplex(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i)
    simplex[i + 1][i] += (x0[i] != 0.0) ? step * std::abs(x0[i]) : step;
  std::vector<double> fv(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) fv[i] = f(simplex[i]);

  for (int it = 0; it < max_iter; ++it) {
    std::vector<std::size_t> order(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0], worst = order[dim], second = order[dim - 1];
    if (fv[worst] - fv[best] < 1e-16 * (1.0 + std::abs(fv[best]))) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d] / dim;
    }
    auto blend = [&](double coef) {
      std::vector<double> y(dim);
      for (std::size_t d = 0; d < dim; ++d)
        y[d] = centroid[d] + coef * (simplex[worst][d] - centroid[d]);
      return y;
    };

    const std::vector<double> refl = blend(-1.0);
    const double f_refl = f(refl);
    if (f_refl < fv[best]) {
      const std::vector<double> exp_pt = blend(-2.0);
      const double f_exp = f(exp_pt);
      if (f_exp < f_refl) {
        simplex[worst] = exp_pt;
        fv[worst] = f_exp;
      } else {
        simplex[worst] = refl;
        fv[worst] = f_refl;
      }
    } else if (f_refl < fv[second]) {
      simplex[worst] = refl;
      fv[worst] = f_refl;
    } else {
      const std::vector<double> con = blend(0.5);
      const double f_con = f(con);
      if (f_con < fv[worst]) {
        simplex[worst] = con;
        fv[worst] = f_con;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < dim; ++d)
            simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }
  const std::size_t best =
      std::min_element(fv.begin(), fv.end()) - fv.begin();
  return simplex[best];
}

}  // namespace

void validate(const FitConstraints& c) {
  if (!(c.width_min > 0.0) || !(c.width_max > 0.0) || c.width_min > c.width_max)
    throw std::invalid_argument("fitter: widths must satisfy 0 < width_min <= width_max");
  if (c.amplitude < 0.0) throw std::invalid_argument("fitter: amplitude must be nonnegative");
}

double model_width_min(const OscillatorParams& p) {
  return rho_extrema(p).min / std::sqrt(classical_c0(p));
}

double model_width_max(const OscillatorParams& p) {
  return rho_extrema(p).max / std::sqrt(classical_c0(p));
}

double model_amplitude(const OscillatorParams& p, double b0) {
  return std::abs(b0 / classical_c0(p) * p.A);
}

FitResult fit_closed_form(const FitConstraints& c_in) {
  validate(c_in);
  FitResult out;
  const FitConstraints c = to_natural(c_in, out.lx_microns);

  const double product = c.width_min * c.width_max;
  if (std::abs(product - 1.0) > 0.05)
    throw std::runtime_error(
        "fit_closed_form: width product " + std::to_string(product) +
        " is inconsistent with the gauge identity width_min*width_max = 1");

  out.params = {c.width_min * c.width_min, 1.0, 0.0, -kPi / 2, 1.0};
  out.b0 = -c.amplitude;
  out.residuals = residual_map(out.params, out.b0, c, {});
  double max_r = 0.0;
  for (const auto& [k, v] : out.residuals) max_r = std::max(max_r, v);
  out.converged = max_r < kResidualTol;
  return out;
}

FitResult fit_least_squares(const FitConstraints& c_in, const std::vector<Observation>& extra) {
  validate(c_in);
  FitResult out;
  const FitConstraints c = to_natural(c_in, out.lx_microns);

  auto unpack = [](const std::vector<double>& v) {
    return OscillatorParams{v[0], 1.0, v[1], v[2], 1.0};
  };
  auto objective = [&](const std::vector<double>& v) {
    const OscillatorParams p = unpack(v);
    if (!(p.A > 0.0) || !(classical_c0(p) > 0.0)) return 1e30 + std::abs(p.A);
    double acc = 0.0;
    for (const auto& [k, r] : residual_map(p, v[3], c, extra)) acc += r * r;
    return acc;
  };

  // Seed from the closed-form gauge, whether or not it is exactly feasible.
  const std::vector<double> seed{c.width_min * c.width_min, 0.0, -kPi / 2, -c.amplitude};
  std::vector<double> best = nelder_mead(objective, seed, 0.08, 4000);

  out.params = unpack(best);
  out.b0 = best[3];
  out.residuals = residual_map(out.params, out.b0, c, extra);
  double max_r = 0.0;
  for (const auto& [k, v] : out.residuals) max_r = std::max(max_r, v);
  out.converged = max_r < kResidualTol;
  return out;
}

}  // namespace wavetrain
