#include "polymerfe/polymer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polymerfe/parallel.hpp"
#include "polymerfe/rng.hpp"
#include "polymerfe/special_functions.hpp"

namespace polymerfe {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming log-sum-exp with running max tracking.
struct RunningLse {
  double max = kNegInf;
  double sum = 0.0;

  void push(double a) {
    if (a == kNegInf) return;
    if (sum == 0.0) {
      max = a;
      sum = 1.0;
    } else if (a <= max) {
      sum += std::exp(a - max);
    } else {
      sum = sum * std::exp(max - a) + 1.0;
      max = a;
    }
  }

  double value() const { return sum == 0.0 ? kNegInf : max + std::log(sum); }
};

void check_window(const BrownianLattice& lat, int n, int i_lo, int i_hi) {
  if (n < 1) throw std::invalid_argument("transfer: n must be >= 1");
  if (lat.n_paths() < n) throw std::invalid_argument("transfer: lattice has fewer than n paths");
  if (i_lo < 0 || i_hi > lat.grid_size() || i_lo >= i_hi) {
    throw std::invalid_argument("transfer: bad grid window");
  }
}

}  // namespace

TransferProfile transfer_initial(const BrownianLattice& lat, double beta,
                                 TransferMode mode, int i_lo, int i_hi) {
  check_window(lat, 1, i_lo, i_hi);
  TransferProfile prof;
  prof.level = 1;
  prof.mode = mode;
  prof.i_lo = i_lo;
  prof.i_hi = i_hi;
  prof.log_values.resize(i_hi - i_lo + 1);
  const double* b = lat.path_values(0);
  const double base = b[i_lo];
  for (int i = i_lo; i <= i_hi; ++i) {
    prof.log_values[i - i_lo] = beta * (b[i] - base);
  }
  return prof;
}

void transfer_advance(TransferProfile& prof, const BrownianLattice& lat,
                      double beta, int path) {
  check_window(lat, path + 1, prof.i_lo, prof.i_hi);
  const double* b = lat.path_values(path);
  const int len = prof.i_hi - prof.i_lo + 1;
  std::vector<double> next(len);
  if (prof.mode == TransferMode::log_sum_exp) {
    const double log_dt = std::log(lat.dt());
    RunningLse lse;
    next[0] = kNegInf;  // empty integral at the window start
    for (int i = 1; i < len; ++i) {
      const int g = prof.i_lo + i;
      lse.push(prof.log_values[i - 1] - beta * b[g - 1]);  // strict s < t
      next[i] = beta * b[g] + log_dt + lse.value();
    }
  } else {
    double run = kNegInf;
    for (int i = 0; i < len; ++i) {
      const int g = prof.i_lo + i;
      run = std::max(run, prof.log_values[i] - b[g]);  // s <= t
      next[i] = b[g] + run;
    }
  }
  prof.log_values = std::move(next);
  ++prof.level;
}

double log_partition_dp_window(const BrownianLattice& lat, double beta, int n,
                               int i_lo, int i_hi) {
  check_window(lat, n, i_lo, i_hi);
  TransferProfile prof = transfer_initial(lat, beta, TransferMode::log_sum_exp, i_lo, i_hi);
  for (int k = 1; k < n; ++k) transfer_advance(prof, lat, beta, k);
  return prof.log_values.back();
}

double log_partition_dp(const BrownianLattice& lat, double beta, int n) {
  return log_partition_dp_window(lat, beta, n, lat.index_of(0.0),
                                 lat.index_of(static_cast<double>(n)));
}

double lpp_dp_window(const BrownianLattice& lat, int n, int i_lo, int i_hi) {
  check_window(lat, n, i_lo, i_hi);
  TransferProfile prof = transfer_initial(lat, 1.0, TransferMode::max_plus, i_lo, i_hi);
  for (int k = 1; k < n; ++k) transfer_advance(prof, lat, 1.0, k);
  return prof.log_values.back();
}

double lpp_dp(const BrownianLattice& lat, int n, double t) {
  return lpp_dp_window(lat, n, lat.index_of(0.0), lat.index_of(t));
}

double gamma_n_dp(const BrownianLattice& lat, double x, int n) {
  if (!(x < 0.0)) throw std::domain_error("gamma_n_dp: x must be < 0");
  const int i_lo = lat.index_of(x * n);
  const int i_hi = lat.index_of(0.0);
  return log_partition_dp_window(lat, 1.0, n, i_lo, i_hi) / n;
}

EstimateRecord estimate_free_energy(double beta, int n, double dt, int replicas,
                                    std::uint64_t seed, int threads) {
  if (replicas < 2) throw std::invalid_argument("estimate_free_energy: replicas must be >= 2");
  std::vector<double> values(replicas);
  parallel_for(replicas, threads, [&](int r) {
    BrownianLattice lat(n, 0.0, static_cast<double>(n), dt,
                        mix_seed(seed, static_cast<std::uint64_t>(r)), 0.0);
    values[r] = log_partition_dp(lat, beta, n) / n;
  });
  return summarize(values, n, dt, seed, "free_energy_mc");
}

EstimateRecord lpp_limit_estimate(int n, double dt, int replicas,
                                  std::uint64_t seed, int threads) {
  if (replicas < 2) throw std::invalid_argument("lpp_limit_estimate: replicas must be >= 2");
  std::vector<double> values(replicas);
  parallel_for(replicas, threads, [&](int r) {
    BrownianLattice lat(n, 0.0, static_cast<double>(n), dt,
                        mix_seed(seed, static_cast<std::uint64_t>(r)), 0.0);
    values[r] = lpp_dp(lat, n, static_cast<double>(n)) / n;
  });
  return summarize(values, n, dt, seed, "lpp_mc");
}

KacDiagnostic grand_partition(double m, int n, double dt,
                              const std::vector<double>& x_grid,
                              std::uint64_t seed, int threads) {
  if (!(m > 0.0)) throw std::domain_error("grand_partition: m must be > 0");
  if (x_grid.size() < 3) throw std::invalid_argument("grand_partition: x_grid needs >= 3 points");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] < 0.0)) throw std::invalid_argument("grand_partition: x_grid must be negative");
    if (i > 0 && !(x_grid[i] > x_grid[i - 1])) {
      throw std::invalid_argument("grand_partition: x_grid must be strictly increasing");
    }
  }
  const double x_min = x_grid.front();
  BrownianLattice lat(n, x_min * n, 0.0, dt, seed, 0.0);

  const int npts = static_cast<int>(x_grid.size());
  std::vector<double> gamma_n(npts);
  parallel_for(npts, threads, [&](int i) { gamma_n[i] = gamma_n_dp(lat, x_grid[i], n); });

  // tilted exponents n(m x + gamma_n(x)) with trapezoid weights
  std::vector<double> tilt(npts);
  int argmax = 0;
  for (int i = 0; i < npts; ++i) {
    tilt[i] = m * x_grid[i] + gamma_n[i];
    if (tilt[i] > tilt[argmax]) argmax = i;
  }
  if (argmax == 0 || argmax == npts - 1) {
    throw std::runtime_error("grand_partition: argmax of m x + gamma_n lies on the x_grid boundary");
  }

  auto weight = [&](int i) {
    if (i == 0) return 0.5 * (x_grid[1] - x_grid[0]);
    if (i == npts - 1) return 0.5 * (x_grid[npts - 1] - x_grid[npts - 2]);
    return 0.5 * (x_grid[i + 1] - x_grid[i - 1]);
  };

  RunningLse total;
  RunningLse window;
  const double center = -trigamma(m);
  for (int i = 0; i < npts; ++i) {
    const double a = n * tilt[i] + std::log(weight(i));
    total.push(a);
    if (std::abs(x_grid[i] - center) <= 0.25) window.push(a);
  }

  KacDiagnostic diag;
  diag.m = m;
  diag.n = n;
  diag.log_xi = total.value() / n;
  diag.argmax_x = x_grid[argmax];
  diag.mass_window = window.value() == kNegInf ? 0.0 : std::exp(window.value() - total.value());
  return diag;
}

MomentIdentityResult moment_identity_check(const BrownianLattice& lat, double beta,
                                           int n, long mc_samples, std::uint64_t seed) {
  if (n < 1 || n > 6) throw std::invalid_argument("moment_identity_check: n must be in [1, 6]");
  if (mc_samples < 2) throw std::invalid_argument("moment_identity_check: mc_samples must be >= 2");
  const int i_lo = lat.index_of(0.0);
  const int i_hi = lat.index_of(static_cast<double>(n));
  const double dt = lat.dt();

  Rng rng(mix_seed(seed, 0x6d6f6d656e74ULL));
  double sum = 0.0, sumsq = 0.0;
  std::vector<int> idx(n - 1);
  for (long s = 0; s < mc_samples; ++s) {
    for (int j = 0; j < n - 1; ++j) {
      const double u = rng.uniform() * n;  // uniform on [0, n)
      int cell = i_lo + static_cast<int>(u / dt);
      if (cell > i_hi - 1) cell = i_hi - 1;
      idx[j] = cell;
    }
    std::sort(idx.begin(), idx.end());
    double energy = 0.0;
    int prev = i_lo;
    for (int k = 0; k < n - 1; ++k) {
      energy += lat.value(k, idx[k]) - lat.value(k, prev);
      prev = idx[k];
    }
    energy += lat.value(n - 1, i_hi) - lat.value(n - 1, prev);
    const double v = std::exp(beta * energy);
    sum += v;
    sumsq += v * v;
  }

  MomentIdentityResult res;
  res.mc_samples = mc_samples;
  res.lhs = sum / mc_samples;
  const double var = std::max(0.0, (sumsq / mc_samples - res.lhs * res.lhs) *
                                        (static_cast<double>(mc_samples) / (mc_samples - 1)));
  res.lhs_std_error = std::sqrt(var / mc_samples);
  res.rhs = std::exp(std::lgamma(static_cast<double>(n)) - (n - 1) * std::log(static_cast<double>(n)) +
                     log_partition_dp_window(lat, beta, n, i_lo, i_hi));
  return res;
}

double default_dt(int n) {
  if (n < 1) throw std::invalid_argument("default_dt: n must be >= 1");
  return std::min(0.025, 1.0 / (4.0 * std::sqrt(static_cast<double>(n))));
}

}  // namespace polymerfe
