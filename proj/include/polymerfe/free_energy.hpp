#ifndef POLYMERFE_FREE_ENERGY_HPP
#define POLYMERFE_FREE_ENERGY_HPP

#include <optional>

namespace polymerfe {

enum class FreeEnergyBranch { exact, small_beta_series };

struct FreeEnergyPoint {
  double beta = 0.0;
  double value = 0.0;
  // a = Psi_1^{-1}(beta^2), the interior maximizer behind gamma(-beta^2);
  // absent on the small-|beta| branch and at beta = 0.
  std::optional<double> maximizer_a;
  FreeEnergyBranch branch = FreeEnergyBranch::exact;
};

struct RatePoint {
  double arg = 0.0;
  double value = 0.0;
  double optimizer_theta = 0.0;
};

// Limit shape gamma(x) = -(-Psi)*(x) = -[x a + Psi(a)] with a = Psi_1^{-1}(-x),
// for x < 0. The stationarity residual |x + Psi_1(a)| is certified <= 1e-10.
double gamma_shape(double x);

// Free energy density: f(0) = 1; otherwise gamma(-beta^2) - 2 log|beta|,
// evaluated as a beta^2 a - Psi(a) - log(beta^2) on the exact branch and by
// the expansion 1 + beta^2/2 - beta^4/24 for 0 < |beta| < 1e-4.
FreeEnergyPoint free_energy(double beta);
double free_energy_value(double beta);

// f'(beta); odd, f'(0) = 0, increasing to 2 as beta -> +inf.
double free_energy_derivative(double beta);

// Lambda(theta) = -2 log|theta| - Psi(1/theta^2), Lambda(0) = 0.
double rate_lambda(double theta);
double rate_lambda_prime(double theta);

// Convex conjugate Lambda*(x) = sup_theta [x theta - Lambda(theta)], with the
// achieving theta. Finite for all real x.
RatePoint rate_lambda_star(double x);

// Lambda_m(theta) = Psi(m) - Psi(m + theta) for m > 0, theta > -m.
double rate_lambda_m(double m, double theta);

// (f-1)*(x) = sup_beta [x beta - (f(beta) - 1)]; +infinity for |x| >= 2.
double conjugate_f_minus_one(double x);

}  // namespace polymerfe

#endif
