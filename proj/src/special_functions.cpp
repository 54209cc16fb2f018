#include "polymerfe/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace polymerfe {

namespace {

// B_2, B_4, ..., B_14 as exact rationals rendered to doubles.
constexpr double kBernoulli[] = {
    1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,
};
constexpr int kNumBernoulli = 7;

// Arguments are shifted past this before the asymptotic series; with terms
// through B_14 the truncation error at x = 10 is below 1e-14.
constexpr double kShiftThreshold = 10.0;

void check_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(who) + ": argument must be finite and > 0");
  }
}

// Psi(x) ~ log x - 1/(2x) - sum B_2k / (2k x^2k), x >= 10
double digamma_asymptotic(double x) {
  const double inv2 = 1.0 / (x * x);
  double p = inv2;
  double tail = 0.0;
  for (int k = 0; k < kNumBernoulli; ++k) {
    tail += kBernoulli[k] / (2.0 * (k + 1)) * p;
    p *= inv2;
  }
  return std::log(x) - 0.5 / x - tail;
}

// Psi_1(x) ~ 1/x + 1/(2x^2) + sum B_2k x^{-2k-1}
double trigamma_asymptotic(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double p = inv * inv2;
  double tail = 0.0;
  for (int k = 0; k < kNumBernoulli; ++k) {
    tail += kBernoulli[k] * p;
    p *= inv2;
  }
  return inv + 0.5 * inv2 + tail;
}

// Psi_2(x) ~ -1/x^2 - 1/x^3 - sum (2k+1) B_2k x^{-2k-2}
double tetragamma_asymptotic(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double p = inv2 * inv2;
  double tail = 0.0;
  for (int k = 0; k < kNumBernoulli; ++k) {
    tail += (2.0 * (k + 1) + 1.0) * kBernoulli[k] * p;
    p *= inv2;
  }
  return -inv2 - inv * inv2 - tail;
}

}  // namespace

PolygammaResult digamma_ext(double x) {
  check_positive(x, "digamma");
  PolygammaResult r;
  double acc = 0.0;
  while (x < kShiftThreshold) {
    acc -= 1.0 / x;  // Psi(x) = Psi(x+1) - 1/x
    x += 1.0;
    ++r.shift_count;
  }
  r.value = acc + digamma_asymptotic(x);
  return r;
}

double digamma(double x) { return digamma_ext(x).value; }

PolygammaResult trigamma_ext(double x) {
  check_positive(x, "trigamma");
  PolygammaResult r;
  double acc = 0.0;
  while (x < kShiftThreshold) {
    acc += 1.0 / (x * x);  // Psi_1(x) = Psi_1(x+1) + 1/x^2
    x += 1.0;
    ++r.shift_count;
  }
  r.value = acc + trigamma_asymptotic(x);
  return r;
}

double trigamma(double x) { return trigamma_ext(x).value; }

double tetragamma(double x) {
  check_positive(x, "tetragamma");
  double acc = 0.0;
  while (x < kShiftThreshold) {
    acc -= 2.0 / (x * x * x);  // Psi_2(x) = Psi_2(x+1) - 2/x^3
    x += 1.0;
  }
  return acc + tetragamma_asymptotic(x);
}

double inv_trigamma(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw std::domain_error("inv_trigamma: argument must be finite and > 0");
  }
  // Initial guess from inverting Psi_1 ~ 1/x + 1/(2x^2).
  double x = 1.0 / y + 0.5;

  // Bracket the root: Psi_1 is strictly decreasing, so expand/shrink until
  // Psi_1(lo) >= y >= Psi_1(hi).
  double lo = x, hi = x;
  while (trigamma(lo) < y) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-300) throw std::runtime_error("inv_trigamma: bracket underflow");
  }
  while (trigamma(hi) > y) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("inv_trigamma: bracket overflow");
  }

  const double tol = 1e-12 * std::max(1.0, y);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = trigamma(x) - y;
    if (std::abs(f) <= tol) return x;
    if (f > 0.0) lo = x; else hi = x;  // decreasing: f > 0 means root is right of x
    const double step = f / tetragamma(x);
    double next = x - step;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  if (std::abs(trigamma(x) - y) <= tol) return x;
  throw std::runtime_error("inv_trigamma: no convergence in 100 iterations");
}

double zeta_int(int n) {
  if (n < 2) throw std::domain_error("zeta_int: n must be >= 2");
  if (n > 55) {
    // zeta(n) - 1 = 2^-n + 3^-n + ...; three terms suffice below 1e-18
    return 1.0 + std::pow(2.0, -n) + std::pow(3.0, -n) + std::pow(4.0, -n);
  }
  // Euler-Maclaurin with N leading terms and J correction terms.
  constexpr int N = 20;
  constexpr int J = 9;
  constexpr double b2j[J] = {
      1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,      5.0 / 66.0,
      -691.0 / 2730.0, 7.0 / 6.0,   -3617.0 / 510.0, 43867.0 / 798.0,
  };
  const double s = n;
  double sum = 0.0;
  for (int k = N; k >= 1; --k) sum += std::pow(k, -s);
  sum += std::pow(N, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(N, -s);
  double rising = s;                      // s(s+1)...(s+2j-2)
  double factorial = 2.0;                 // (2j)!
  double npow = std::pow(N, -s - 1.0);    // N^{-s-2j+1}
  for (int j = 1; j <= J; ++j) {
    sum += b2j[j - 1] / factorial * rising * npow;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    npow /= static_cast<double>(N) * N;
  }
  return sum;
}

namespace {

constexpr int kZetaTableMax = 512;

const std::vector<double>& zeta_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kZetaTableMax + 1, 0.0);
    for (int n = 2; n <= kZetaTableMax; ++n) t[n] = zeta_int(n);
    return t;
  }();
  return table;
}

void check_series_domain(double z, int terms, const char* who) {
  if (!(std::abs(z) < 2.0)) {
    throw std::domain_error(std::string(who) + ": series requires |z| < 2");
  }
  if (terms < 1 || terms > kZetaTableMax) {
    throw std::domain_error(std::string(who) + ": terms out of range");
  }
}

}  // namespace

double loggamma_series(double z, int terms) {
  check_series_domain(z, terms, "loggamma_series");
  const auto& zeta = zeta_table();
  double sum = -std::log1p(z) + z * (1.0 - kEulerGamma);
  double zn = z * z;
  double sign = 1.0;  // (-1)^n for n = 2
  for (int n = 2; n <= terms; ++n) {
    sum += sign * (zeta[n] - 1.0) * zn / n;
    zn *= z;
    sign = -sign;
  }
  return sum;
}

double digamma_power_series(double x, int terms) {
  const double z = x - 1.0;
  check_series_domain(z, terms, "digamma_power_series");
  const auto& zeta = zeta_table();
  double sum = -1.0 / (1.0 + z) + (1.0 - kEulerGamma);
  double zn = z;
  double sign = 1.0;
  for (int n = 2; n <= terms; ++n) {
    sum += sign * (zeta[n] - 1.0) * zn;
    zn *= z;
    sign = -sign;
  }
  return sum;
}

double trigamma_power_series(double x, int terms) {
  const double z = x - 1.0;
  check_series_domain(z, terms, "trigamma_power_series");
  const auto& zeta = zeta_table();
  double sum = 1.0 / ((1.0 + z) * (1.0 + z));
  double zn = 1.0;
  double sign = 1.0;
  for (int n = 2; n <= terms; ++n) {
    sum += sign * (zeta[n] - 1.0) * (n - 1.0) * zn;
    zn *= z;
    sign = -sign;
  }
  return sum;
}

}  // namespace polymerfe
