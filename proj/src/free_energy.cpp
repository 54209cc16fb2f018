#include "polymerfe/free_energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "polymerfe/optimize.hpp"
#include "polymerfe/special_functions.hpp"

namespace polymerfe {

namespace {

constexpr double kSmallBeta = 1e-4;
// Below this the even series for Lambda avoids the -2log|t| - Psi(1/t^2)
// cancellation; at |t| = 1/3 its truncation error is < 3e-16.
constexpr double kSmallTheta = 1.0 / 3.0;

constexpr double kBernoulli[] = {
    1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,
};
constexpr int kNumBernoulli = 7;

}  // namespace

double gamma_shape(double x) {
  if (!(x < 0.0) || !std::isfinite(x)) {
    throw std::domain_error("gamma_shape: argument must be finite and < 0");
  }
  const double a = inv_trigamma(-x);
  const double residual = std::abs(x + trigamma(a));
  if (residual > 1e-10 * std::max(1.0, std::abs(x))) {
    throw std::runtime_error("gamma_shape: stationarity residual exceeds 1e-10");
  }
  return -(x * a + digamma(a));
}

FreeEnergyPoint free_energy(double beta) {
  FreeEnergyPoint p;
  p.beta = beta;
  if (beta == 0.0) {
    p.value = 1.0;
    p.branch = FreeEnergyBranch::exact;
    return p;
  }
  const double b2 = beta * beta;
  if (std::abs(beta) < kSmallBeta) {
    // f = a Psi_1(a) - Psi(a) - log Psi_1(a) expanded through a^-2 with
    // a = 1/b^2 + 1/2 - b^2/12 + O(b^4).
    p.value = 1.0 + b2 / 2.0 - b2 * b2 / 24.0;
    p.branch = FreeEnergyBranch::small_beta_series;
    return p;
  }
  const double a = inv_trigamma(b2);
  p.value = a * b2 - digamma(a) - std::log(b2);
  p.maximizer_a = a;
  p.branch = FreeEnergyBranch::exact;
  return p;
}

double free_energy_value(double beta) { return free_energy(beta).value; }

double free_energy_derivative(double beta) {
  if (beta == 0.0) return 0.0;
  const double b = std::abs(beta);
  const double b2 = b * b;
  double d;
  if (b < kSmallBeta) {
    d = b - b2 * b / 6.0;
  } else {
    const double a = inv_trigamma(b2);
    d = (2.0 / b) * (a * b2 - 1.0);
  }
  return beta > 0.0 ? d : -d;
}

double rate_lambda(double theta) {
  if (theta == 0.0) return 0.0;
  const double t = std::abs(theta);
  if (t <= kSmallTheta) {
    // Lambda = t^2/2 + sum_k B_2k/(2k) t^{4k}
    const double t4 = t * t * t * t;
    double p = t4;
    double sum = 0.5 * t * t;
    for (int k = 0; k < kNumBernoulli; ++k) {
      sum += kBernoulli[k] / (2.0 * (k + 1)) * p;
      p *= t4;
    }
    return sum;
  }
  return -2.0 * std::log(t) - digamma(1.0 / (t * t));
}

double rate_lambda_prime(double theta) {
  if (theta == 0.0) return 0.0;
  const double t = std::abs(theta);
  double d;
  if (t <= kSmallTheta) {
    // Lambda' = t + sum_k 2 B_2k t^{4k-1}
    const double t4 = t * t * t * t;
    double p = t4 / t;
    d = t;
    for (int k = 0; k < kNumBernoulli; ++k) {
      d += 2.0 * kBernoulli[k] * p;
      p *= t4;
    }
  } else {
    const double x = 1.0 / (t * t);
    d = (2.0 / t) * (x * trigamma(x) - 1.0);
  }
  return theta > 0.0 ? d : -d;
}

namespace {

double rate_lambda_second(double theta) {
  const double t = std::abs(theta);
  if (t <= kSmallTheta) {
    // Lambda'' = 1 + sum_k 2(4k-1) B_2k t^{4k-2}
    const double t4 = t * t * t * t;
    double p = t * t;
    double s = 1.0;
    for (int k = 0; k < kNumBernoulli; ++k) {
      s += 2.0 * (4.0 * (k + 1) - 1.0) * kBernoulli[k] * p;
      p *= t4;
    }
    return s;
  }
  const double x = 1.0 / (t * t);
  const double t2 = t * t;
  const double t4 = t2 * t2;
  return 2.0 / t2 - 6.0 * trigamma(x) / t4 - 4.0 * tetragamma(x) / (t4 * t2);
}

}  // namespace

RatePoint rate_lambda_star(double x) {
  RatePoint r;
  r.arg = x;
  if (x == 0.0) return r;  // Lambda(0) = Lambda'(0) = 0, convexity
  const double ax = std::abs(x);

  // Geometric bracket growth: Lambda' is increasing with Lambda'(0) = 0.
  double hi = 1.0;
  int grow = 0;
  while (rate_lambda_prime(hi) < ax) {
    hi *= 2.0;
    if (++grow > 60) throw std::runtime_error("rate_lambda_star: bracket growth exhausted");
  }
  const double tol = 1e-12 * std::max(1.0, ax);
  const double theta = newton_bracketed(
      [ax](double t) { return rate_lambda_prime(t) - ax; },
      [](double t) { return rate_lambda_second(t); },
      std::min(ax, hi * 0.5), 0.0, hi, tol);
  r.optimizer_theta = x > 0.0 ? theta : -theta;
  r.value = ax * theta - rate_lambda(theta);
  if (r.value < 0.0 && r.value > -1e-14) r.value = 0.0;
  return r;
}

double rate_lambda_m(double m, double theta) {
  if (!(m > 0.0)) throw std::domain_error("rate_lambda_m: m must be > 0");
  if (!(theta > -m)) throw std::domain_error("rate_lambda_m: theta must exceed -m");
  return digamma(m) - digamma(m + theta);
}

double conjugate_f_minus_one(double x) {
  const double ax = std::abs(x);
  if (ax >= 2.0) return std::numeric_limits<double>::infinity();
  if (x == 0.0) return 0.0;  // f min at 0 with f(0) = 1

  double hi = 1.0;
  int grow = 0;
  while (free_energy_derivative(hi) < ax) {
    hi *= 2.0;
    if (++grow > 60) throw std::runtime_error("conjugate_f_minus_one: bracket growth exhausted");
  }
  const double tol = 1e-12 * std::max(1.0, ax);
  const double beta = newton_bracketed(
      [ax](double b) { return free_energy_derivative(b) - ax; },
      [](double b) {
        const double h = 1e-6 * std::max(1.0, std::abs(b));
        return (free_energy_derivative(b + h) - free_energy_derivative(b - h)) / (2.0 * h);
      },
      std::min(ax, hi * 0.5), 0.0, hi, tol);
  double v = ax * beta - (free_energy_value(beta) - 1.0);
  if (v < 0.0 && v > -1e-14) v = 0.0;
  return v;
}

}  // namespace polymerfe
