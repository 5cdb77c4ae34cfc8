#pragma once

#include <vector>

namespace wavetrain {

// Gauss-Hermite rule for the weight function exp(-xi^2).
// Nodes are strictly increasing and symmetric about 0; the weights sum to sqrt(pi).
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Physicists' Hermite polynomial H_n(xi) by the raw three-term recurrence.
// Limited to n <= 64; beyond that the unnormalized values overflow.
double hermite_phys(int n, double xi);

// Orthonormal Hermite function pi^{-1/4} (2^n n!)^{-1/2} H_n(xi) exp(-xi^2/2),
// evaluated with the normalized recurrence so no intermediate overflows occur
// for any n <= 512. This is the canonical evaluation path for wavefunctions.
double hermite_function(int n, double xi);

// H_n(xi) / sqrt(2^n n! sqrt(pi)) without the Gaussian factor. Used to undo
// the exp(-xi^2) weight when pairing wavefunction samples with a quadrature rule.
double hermite_poly_normalized(int n, double xi);

// Nodes by Newton iteration on the Hermite function, seeded from the usual
// asymptotic estimates, largest root inward. 1 <= order <= 512.
QuadratureRule gauss_hermite(int order);

// Smallest |xi| beyond which |hermite_function(n, xi)| stays below tol.
double hermite_tail_cutoff(int n, double tol = 1e-13);

}  // namespace wavetrain
