#include "wavetrain/special_fn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavetrain {

namespace {
constexpr double kPiQuarterInv = 0.7511255444649424828587030047762276930510;  // pi^(-1/4)
}

double hermite_phys(int n, double xi) {
  if (n < 0) throw std::invalid_argument("hermite_phys: n must be nonnegative");
  if (n > 64)
    throw std::invalid_argument("hermite_phys: n = " + std::to_string(n) +
                                " exceeds 64, raw recurrence would overflow");
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * xi * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// Shared normalized recurrence: h_{k+1} = xi sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}.
double normalized_recurrence(int n, double xi, double h0) {
  double prev = 0.0;
  double cur = h0;
  for (int k = 0; k < n; ++k) {
    const double next =
        xi * std::sqrt(2.0 / (k + 1)) * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double hermite_function(int n, double xi) {
  if (n < 0) throw std::invalid_argument("hermite_function: n must be nonnegative");
  if (n > 512)
    throw std::invalid_argument("hermite_function: n = " + std::to_string(n) + " exceeds 512");
  return normalized_recurrence(n, xi, kPiQuarterInv * std::exp(-0.5 * xi * xi));
}

double hermite_poly_normalized(int n, double xi) {
  if (n < 0) throw std::invalid_argument("hermite_poly_normalized: n must be nonnegative");
  if (n > 512)
    throw std::invalid_argument("hermite_poly_normalized: n = " + std::to_string(n) +
                                " exceeds 512");
  return normalized_recurrence(n, xi, kPiQuarterInv);
}

QuadratureRule gauss_hermite(int order) {
  if (order < 1 || order > 512)
    throw std::invalid_argument("gauss_hermite: order must be in [1, 512]");

  QuadratureRule rule;
  rule.order = order;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);

  const int half = (order + 1) / 2;
  std::vector<double> roots(half, 0.0);  // descending, positive half

  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Seeds from the classic asymptotic estimates, previous roots extrapolated.
    if (i == 0) {
      z = std::sqrt(2.0 * order + 1.0) - 1.85575 * std::pow(2.0 * order + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(double(order), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * roots[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * roots[1];
    } else {
      z = 2.0 * z - roots[i - 2];
    }
    if ((order % 2 == 1) && i == half - 1) z = 0.0;  // middle root is exact

    bool converged = false;
    for (int it = 0; it < 200; ++it) {
      const double f = hermite_function(order, z);
      const double fm = hermite_function(order - 1, z);
      const double df = std::sqrt(2.0 * order) * fm - z * f;
      const double dz = f / df;
      z -= dz;
      if (std::abs(dz) < 1e-14 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw std::runtime_error("gauss_hermite: node " + std::to_string(i) +
                               " of order " + std::to_string(order) + " did not converge");
    roots[i] = z;
  }

  for (int i = 0; i < half; ++i) {
    const double x = roots[i];
    const double fm = hermite_function(order - 1, x);
    // w = 1 / (order * p_{order-1}(x)^2) with p the Gaussian-free orthonormal value.
    const double w = std::exp(-x * x) / (order * fm * fm);
    rule.nodes[order - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[order - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (order % 2 == 1) rule.nodes[half - 1] = 0.0;
  return rule;
}

double hermite_tail_cutoff(int n, double tol) {
  double xi = std::sqrt(2.0 * n + 1.0);
  while (std::abs(hermite_function(n, xi)) > tol) xi += 0.01;
  // step past the last excursion above tol
  for (double probe = xi; probe < xi + 2.0; probe += 0.01) {
    if (std::abs(hermite_function(n, probe)) > tol) xi = probe + 0.01;
  }
  return xi;
}

}  // namespace wavetrain
