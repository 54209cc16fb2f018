#ifndef POLYMERFE_BROWNIAN_QUEUE_HPP
#define POLYMERFE_BROWNIAN_QUEUE_HPP

#include <cstdint>
#include <vector>

#include "polymerfe/environment.hpp"

namespace polymerfe {

// One realization of the stationary queue functional r(0).
struct QueueSample {
  double m = 0.0;
  double r0 = 0.0;
  double horizon = 0.0;
  double dt = 0.0;
  std::uint64_t seed = 0;
};

struct TandemResult {
  double m = 0.0;
  int n = 0;
  double mean_r = 0.0;               // (1/n) sum_k r_k(0)
  std::vector<double> per_stage;     // r_1(0), ..., r_n(0)
  bool horizon_ok = true;            // integrand mass in the oldest 10% of the
                                     // window stayed below 1e-8 of the total
};

// r(0) = log int_{-H}^0 exp{B_{(s,0)} + C_{(s,0)} - m(0-s)} ds on the grid
// (left-endpoint log-sum-exp). Equals tandem(m, 1, ...) on the same seed.
QueueSample sample_r0(double m, double horizon, double dt, std::uint64_t seed);

// n queues in tandem on one environment: stage k integrates the departures of
// stage k-1 plus a fresh path, all profiles materialized on the shared grid.
TandemResult tandem(double m, int n, double horizon, double dt, std::uint64_t seed);

// Same recursion on a caller-provided lattice with n+1 paths over [-H, 0]
// anchored at 0 (path 0 drives stage 1). i_lo restricts the integration
// window (horizon-robustness checks).
TandemResult tandem_on_lattice(const BrownianLattice& lat, double m, int n, int i_lo = 0);

// Statistical checks of quasi-reversibility: the departure process
// f_1(t) = B_{(0,t)} + r_1(0) - r_1(t) sampled on [0, 2] over independent
// environments. 3-stderr verdicts (5% for the variance ratio).
struct DepartureCheck {
  int n_samples = 0;
  double mean_increment = 0.0;      // f_1(1) - f_1(0), target 0
  double mean_increment_se = 0.0;
  double variance_lag1 = 0.0;       // Var(f_1 increment over lag 1), target 1
  double lag_corr = 0.0;            // corr of consecutive unit increments
  double queue_corr = 0.0;          // corr(f_1(1) - f_1(0.5), r_1(1)), target 0
  double corr_se = 0.0;             // ~ 1/sqrt(n_samples)
  bool mean_ok = false;
  bool variance_ok = false;
  bool lag_corr_ok = false;
  bool queue_corr_ok = false;
  bool pass = false;
};

DepartureCheck departure_brownian_check(double m, double horizon, double dt,
                                        int n_samples, std::uint64_t seed,
                                        int threads = 0);

// Default truncation horizon max(40/m, 40): e^{-40} relative truncation with
// slack for the a.s. fluctuations of the tail mass.
double default_horizon(double m);

}  // namespace polymerfe

#endif
