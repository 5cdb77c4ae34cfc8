#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wavetrain/special_fn.hpp"

using namespace wavetrain;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.7724538509055160272981674833411452;

// Brute-force Hermite series from the explicit sum, usable for small n only.
double hermite_sum(int n, double x) {
  double acc = 0.0;
  for (int m = 0; m <= n / 2; ++m) {
    double term = std::tgamma(n + 1.0) / (std::tgamma(m + 1.0) * std::tgamma(n - 2 * m + 1.0));
    term *= std::pow(-1.0, m) * std::pow(2.0 * x, n - 2 * m);
    acc += term;
  }
  return acc;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }
}  // namespace

TEST_CASE("hermite_phys matches the explicit polynomial sum") {
  const std::vector<double> xs{-3.2, -1.0, -0.25, 0.0, 0.4, 1.7, 2.9};
  for (int n : {0, 1, 2, 3, 5, 8, 12}) {
    for (double x : xs) {
      const double ref = hermite_sum(n, x);
      CHECK(hermite_phys(n, x) == doctest::Approx(ref).epsilon(1e-11));
    }
  }
}

TEST_CASE("hermite_phys low orders in closed form") {
  CHECK(hermite_phys(0, 1.3) == 1.0);
  CHECK(hermite_phys(1, 1.3) == doctest::Approx(2.6));
  CHECK(hermite_phys(2, 1.3) == doctest::Approx(4 * 1.3 * 1.3 - 2));
  CHECK(hermite_phys(3, -0.7) == doctest::Approx(8 * std::pow(-0.7, 3) + 12 * 0.7));
}

TEST_CASE("hermite_phys rejects orders that overflow") {
  CHECK_THROWS_AS((void)hermite_phys(65, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)hermite_phys(-1, 0.5), std::invalid_argument);
}

TEST_CASE("hermite_function equals normalized H_n exp(-x^2/2) at small n") {
  for (int n : {0, 1, 2, 5, 9}) {
    for (double x : {-2.1, -0.3, 0.0, 0.9, 2.7}) {
      const double norm =
          std::exp(-0.5 * (n * std::log(2.0) + log_factorial(n)) - 0.25 * std::log(kPi));
      const double ref = norm * hermite_sum(n, x) * std::exp(-0.5 * x * x);
      CHECK(hermite_function(n, x) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("hermite_function stays finite at high order where the raw recurrence cannot") {
  // raw H_200(6) overflows double; the normalized path must not
  const double v = hermite_function(200, 6.0);
  CHECK(std::isfinite(v));
  CHECK(std::abs(v) < 1.0);  // sup norm of any Hermite function is below 1
}

TEST_CASE("hermite_function L2 normalization via quadrature") {
  // integral of h_n^2 equals 1; pair the stripped polynomial with the rule weight
  const QuadratureRule rule = gauss_hermite(64);
  for (int n : {0, 3, 10, 25}) {
    double acc = 0.0;
    for (int i = 0; i < rule.order; ++i) {
      const double p = hermite_poly_normalized(n, rule.nodes[i]);
      acc += rule.weights[i] * p * p;
    }
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("hermite_poly_normalized carries no Gaussian factor") {
  for (double x : {-1.7, 0.2, 2.4}) {
    const double expected = hermite_function(7, x) * std::exp(0.5 * x * x);
    CHECK(hermite_poly_normalized(7, x) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("gauss_hermite closed-form rules at order 1 and 2") {
  const QuadratureRule r1 = gauss_hermite(1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(kSqrtPi));

  const QuadratureRule r2 = gauss_hermite(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(r2.weights[0] == doctest::Approx(kSqrtPi / 2));
  CHECK(r2.weights[1] == doctest::Approx(kSqrtPi / 2));
}

TEST_CASE("gauss_hermite integrates monomial moments exactly") {
  // moments of exp(-x^2): odd vanish, even are sqrt(pi) (2k-1)!! / 2^k
  const QuadratureRule rule = gauss_hermite(24);
  double moment = kSqrtPi;
  for (int k = 0; k <= 20; ++k) {
    double acc_even = 0.0, acc_odd = 0.0;
    for (int i = 0; i < rule.order; ++i) {
      acc_even += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
      acc_odd += rule.weights[i] * std::pow(rule.nodes[i], 2 * k + 1);
    }
    CHECK(acc_even == doctest::Approx(moment).epsilon(1e-12));
    CHECK(acc_odd == doctest::Approx(0.0).scale(moment));
    moment *= (2 * k + 1) / 2.0;
  }
}

TEST_CASE("gauss_hermite nodes are symmetric, increasing, and roots of H_n") {
  for (int order : {7, 16, 63, 128}) {
    const QuadratureRule rule = gauss_hermite(order);
    REQUIRE((int)rule.nodes.size() == order);
    for (int i = 0; i + 1 < order; ++i) CHECK(rule.nodes[i] < rule.nodes[i + 1]);
    for (int i = 0; i < order; ++i)
      CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[order - 1 - i]).epsilon(1e-14));
    if (order % 2 == 1) CHECK(rule.nodes[order / 2] == 0.0);
    for (int i = 0; i < order; ++i)
      CHECK(hermite_function(order, rule.nodes[i]) == doctest::Approx(0.0).scale(1.0));
  }
}

TEST_CASE("gauss_hermite weights are positive and sum to sqrt(pi) at moderate order") {
  for (int order : {5, 32, 96}) {
    const QuadratureRule rule = gauss_hermite(order);
    double sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(kSqrtPi).epsilon(1e-13));
  }
}

TEST_CASE("gauss_hermite rejects invalid orders") {
  CHECK_THROWS_AS((void)gauss_hermite(0), std::invalid_argument);
  CHECK_THROWS_AS((void)gauss_hermite(513), std::invalid_argument);
}

TEST_CASE("hermite_tail_cutoff brackets the decay point") {
  for (int n : {0, 4, 10}) {
    const double cut = hermite_tail_cutoff(n, 1e-13);
    CHECK(std::abs(hermite_function(n, cut + 0.2)) < 1e-13);
    CHECK(cut > std::sqrt(2.0 * n + 1.0));  // beyond the classical turning point
  }
}
