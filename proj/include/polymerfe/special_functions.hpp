#ifndef POLYMERFE_SPECIAL_FUNCTIONS_HPP
#define POLYMERFE_SPECIAL_FUNCTIONS_HPP

namespace polymerfe {

// Euler's constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

enum class PolygammaMethod { recurrence_plus_asymptotic, power_series };

struct PolygammaResult {
  double value = 0.0;
  PolygammaMethod method = PolygammaMethod::recurrence_plus_asymptotic;
  int shift_count = 0;  // recurrence steps applied before the series
};

// Digamma Psi(x) on (0, inf): upward recurrence past x >= 10, then the
// Bernoulli asymptotic series. Absolute error <= 1e-12 on [1e-3, 1e6].
double digamma(double x);
PolygammaResult digamma_ext(double x);

// Trigamma Psi_1(x) = Psi'(x) on (0, inf), same scheme.
// Error <= 1e-12 * max(1, Psi_1(x)).
double trigamma(double x);
PolygammaResult trigamma_ext(double x);

// Tetragamma Psi_2(x) = Psi''(x) on (0, inf); strictly negative. Used as the
// Newton derivative for inv_trigamma.
double tetragamma(double x);

// Inverse of trigamma on (0, inf): returns x with
// |Psi_1(x) - y| <= 1e-12 * max(1, y). Safeguarded Newton with a bracketing
// fallback; throws std::runtime_error if not converged in 100 iterations.
double inv_trigamma(double y);

// Partial sum of log Gamma(1+z) = -log(1+z) + z(1-EulerGamma)
//   + sum_{n>=2} (-1)^n [zeta(n)-1] z^n / n,  valid for |z| < 2.
// Independent of the recurrence+asymptotic path; serves as its oracle.
double loggamma_series(double z, int terms);

// Term-by-term derivatives of the same series: Psi(x) and Psi_1(x) for
// |x - 1| < 2 (method = power_series).
double digamma_power_series(double x, int terms);
double trigamma_power_series(double x, int terms);

// zeta(n) for integer n >= 2, Euler-Maclaurin accelerated partial sums,
// accurate to ~1e-16. Exposed for the series oracle.
double zeta_int(int n);

}  // namespace polymerfe

#endif
