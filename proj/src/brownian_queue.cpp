#include "polymerfe/brownian_queue.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "polymerfe/parallel.hpp"
#include "polymerfe/rng.hpp"

namespace polymerfe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RunningLse {
  double max = -kInf;
  double sum = 0.0;
  void push(double a) {
    if (a == -kInf) return;
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
  bool empty() const { return sum == 0.0; }
  double value() const { return empty() ? -kInf : max + std::log(sum); }
};

void check_queue_params(double m, double horizon, double dt) {
  if (!(m > 0.0)) throw std::domain_error("queue: m must be > 0");
  if (!(horizon > 0.0)) throw std::invalid_argument("queue: horizon must be > 0");
  if (!(dt > 0.0) || dt >= horizon) throw std::invalid_argument("queue: bad dt");
}

// One stage of the queue recursion on the grid. g[j] = f_prev[j] + B^k[j] - m t_j;
// r_k[j] = g[j] + log dt + LSE_{i_lo <= u < j} exp(-g[u]). Profiles are
// anchored at the lattice anchor (time 0), where they vanish.
struct StageResult {
  std::vector<double> r;   // r_k at every grid index
  bool horizon_ok = true;
};

StageResult queue_stage(const BrownianLattice& lat, const std::vector<double>& f_prev,
                        int path, double m, int i_lo, int i_zero) {
  const double log_dt = std::log(lat.dt());
  const double* b = lat.path_values(path);
  StageResult out;
  out.r.assign(f_prev.size(), -kInf);
  RunningLse lse;
  RunningLse early;
  const int early_end = i_lo + (i_zero - i_lo) / 10;  // oldest 10% of the window
  for (int j = i_lo; j < static_cast<int>(f_prev.size()); ++j) {
    const double g = f_prev[j] + b[j] - m * lat.time_at(j);
    if (j > i_lo && !lse.empty() && std::isfinite(g)) {
      out.r[j] = g + log_dt + lse.value();
    }
    if (j == i_zero && !early.empty() && !lse.empty()) {
      // mass feeding r(0) that came from the oldest 10% of the window
      out.horizon_ok = std::exp(early.value() - lse.value()) <= 1e-8;
    }
    if (std::isfinite(g)) {
      lse.push(-g);
      if (j < early_end) early.push(-g);
    }
  }
  return out;
}

}  // namespace

TandemResult tandem_on_lattice(const BrownianLattice& lat, double m, int n, int i_lo) {
  if (!(m > 0.0)) throw std::domain_error("tandem: m must be > 0");
  if (n < 1) throw std::invalid_argument("tandem: n must be >= 1");
  if (lat.n_paths() < n + 1) throw std::invalid_argument("tandem: lattice needs n+1 paths");
  const int i_zero = lat.anchor_index();
  if (i_lo < 0 || i_lo >= i_zero) throw std::invalid_argument("tandem: bad window start");

  TandemResult res;
  res.m = m;
  res.n = n;
  res.per_stage.reserve(n);

  // f_0 = the arrivals path, already anchored to 0 at time 0.
  std::vector<double> f(lat.path_values(0), lat.path_values(0) + i_zero + 1);
  for (int k = 1; k <= n; ++k) {
    StageResult stage = queue_stage(lat, f, k, m, i_lo, i_zero);
    const double rk0 = stage.r[i_zero];
    res.per_stage.push_back(rk0);
    res.horizon_ok = res.horizon_ok && stage.horizon_ok;
    if (k < n) {
      // f_k(t) = f_{k-1}(t) + r_k(0) - r_k(t); +inf marks the dead zone at the
      // window edge, which the next stage's integrand sends to zero.
      for (int j = i_lo; j <= i_zero; ++j) f[j] = f[j] + rk0 - stage.r[j];
    }
  }
  double sum = 0.0;
  for (double v : res.per_stage) sum += v;
  res.mean_r = sum / n;
  return res;
}

TandemResult tandem(double m, int n, double horizon, double dt, std::uint64_t seed) {
  check_queue_params(m, horizon, dt);
  BrownianLattice lat(n + 1, -horizon, 0.0, dt, seed, 0.0);
  return tandem_on_lattice(lat, m, n);
}

QueueSample sample_r0(double m, double horizon, double dt, std::uint64_t seed) {
  TandemResult t = tandem(m, 1, horizon, dt, seed);
  QueueSample s;
  s.m = m;
  s.r0 = t.per_stage[0];
  s.horizon = horizon;
  s.dt = dt;
  s.seed = seed;
  return s;
}

DepartureCheck departure_brownian_check(double m, double horizon, double dt,
                                        int n_samples, std::uint64_t seed,
                                        int threads) {
  check_queue_params(m, horizon, dt);
  if (n_samples < 16) throw std::invalid_argument("departure_brownian_check: too few samples");
  const double t_max = 2.0;

  std::vector<double> x1(n_samples), x2(n_samples), y(n_samples), rq(n_samples);
  parallel_for(n_samples, threads, [&](int s) {
    BrownianLattice lat(2, -horizon, t_max, dt,
                        mix_seed(seed, static_cast<std::uint64_t>(s)), 0.0);
    const int i_zero = lat.anchor_index();
    const int i_end = lat.grid_size();
    // Single stage over the whole span; profile f_0 = arrivals path.
    std::vector<double> f0(lat.path_values(0), lat.path_values(0) + i_end + 1);
    StageResult stage = queue_stage(lat, f0, 1, m, 0, i_zero);
    const double r_at_0 = stage.r[i_zero];
    auto f1 = [&](double t) {
      const int j = lat.index_of(t);
      return lat.value(0, j) + r_at_0 - stage.r[j];
    };
    const double f_half = f1(0.5), f_one = f1(1.0), f_two = f1(2.0);
    x1[s] = f_one;               // f_1(1) - f_1(0), f_1(0) = 0
    x2[s] = f_two - f_one;
    y[s] = f_one - f_half;
    rq[s] = stage.r[lat.index_of(1.0)];
  });

  auto mean_of = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
  };
  auto var_of = [&](const std::vector<double>& v, double mu) {
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return s / (v.size() - 1);
  };
  auto corr_of = [&](const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = mean_of(a), mb = mean_of(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sab += (a[i] - ma) * (b[i] - mb);
      saa += (a[i] - ma) * (a[i] - ma);
      sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
  };

  DepartureCheck chk;
  chk.n_samples = n_samples;
  const double mu1 = mean_of(x1);
  const double v1 = var_of(x1, mu1);
  chk.mean_increment = mu1;
  chk.mean_increment_se = std::sqrt(v1 / n_samples);
  chk.variance_lag1 = v1;
  chk.lag_corr = corr_of(x1, x2);
  chk.queue_corr = corr_of(y, rq);
  chk.corr_se = 1.0 / std::sqrt(static_cast<double>(n_samples));
  chk.mean_ok = std::abs(chk.mean_increment) <= 3.0 * chk.mean_increment_se;
  chk.variance_ok = std::abs(chk.variance_lag1 - 1.0) <= 0.05;
  chk.lag_corr_ok = std::abs(chk.lag_corr) <= 3.0 * chk.corr_se;
  chk.queue_corr_ok = std::abs(chk.queue_corr) <= 3.0 * chk.corr_se;
  chk.pass = chk.mean_ok && chk.variance_ok && chk.lag_corr_ok && chk.queue_corr_ok;
  return chk;
}

double default_horizon(double m) {
  if (!(m > 0.0)) throw std::domain_error("default_horizon: m must be > 0");
  return std::max(40.0 / m, 40.0);
}

}  // namespace polymerfe
