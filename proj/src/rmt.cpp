#include "polymerfe/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polymerfe/environment.hpp"
#include "polymerfe/parallel.hpp"
#include "polymerfe/polymer.hpp"
#include "polymerfe/rng.hpp"

namespace polymerfe {

TridiagonalMatrix sample_gue_tridiag(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_gue_tridiag: n must be >= 1");
  Rng rng(mix_seed(seed, 0x475545ULL));
  TridiagonalMatrix T;
  T.diag.resize(n);
  T.offdiag.resize(n - 1);
  for (int i = 0; i < n; ++i) T.diag[i] = rng.normal();
  for (int k = 0; k < n - 1; ++k) {
    // chi_{2(n-k-1... )}: entry k (1-based k+1) has 2(n-(k+1)) dof;
    // chi_d / sqrt(2) = sqrt(gamma(d/2, 1)).
    T.offdiag[k] = std::sqrt(rng.gamma(static_cast<double>(n - 1 - k)));
  }
  return T;
}

int sturm_count_below(const TridiagonalMatrix& T, double x) {
  const int n = static_cast<int>(T.diag.size());
  if (n == 0) throw std::invalid_argument("sturm_count_below: empty matrix");
  if (T.offdiag.size() + 1 != T.diag.size()) {
    throw std::invalid_argument("sturm_count_below: offdiag size must be n-1");
  }
  int count = 0;
  double d = T.diag[0] - x;
  if (d == 0.0) d = -1e-300;
  if (d < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    d = T.diag[i] - x - T.offdiag[i - 1] * T.offdiag[i - 1] / d;
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

double largest_eigenvalue(const TridiagonalMatrix& T) {
  const int n = static_cast<int>(T.diag.size());
  if (n == 0) throw std::invalid_argument("largest_eigenvalue: empty matrix");
  double lo = T.diag[0], hi = T.diag[0];
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(T.offdiag[i - 1]);
    if (i < n - 1) r += std::abs(T.offdiag[i]);
    lo = std::min(lo, T.diag[i] - r);
    hi = std::max(hi, T.diag[i] + r);
  }
  hi += 1e-8 * (1.0 + std::abs(hi));  // count(hi) == n for sure
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count_below(T, mid) == n) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

GueLppComparison gue_vs_lpp(int n, int replicas, double dt, std::uint64_t seed,
                            int threads) {
  if (replicas < 2) throw std::invalid_argument("gue_vs_lpp: replicas must be >= 2");
  if (n > 128) throw std::invalid_argument("gue_vs_lpp: n capped at 128");

  std::vector<double> gue(replicas), lpp_coarse(replicas), gap(replicas);
  parallel_for(replicas, threads, [&](int r) {
    gue[r] = largest_eigenvalue(
        sample_gue_tridiag(n, mix_seed(seed, 0x657667ULL, static_cast<std::uint64_t>(r))));

    // Sample at dt/2, subsample every other column for the dt lattice; the
    // per-replica refinement gap feeds the Richardson allowance.
    BrownianLattice fine(n, 0.0, 1.0, 0.5 * dt,
                         mix_seed(seed, 0x6c7070ULL, static_cast<std::uint64_t>(r)), 0.0);
    std::vector<std::vector<double>> coarse_rows(n);
    for (int p = 0; p < n; ++p) {
      coarse_rows[p].resize(fine.grid_size() / 2 + 1);
      for (int j = 0; j <= fine.grid_size() / 2; ++j) coarse_rows[p][j] = fine.value(p, 2 * j);
    }
    BrownianLattice coarse = BrownianLattice::from_values(std::move(coarse_rows), 0.0, dt, 0);
    const double l_fine = lpp_dp(fine, n, 1.0);
    const double l_coarse = lpp_dp(coarse, n, 1.0);
    lpp_coarse[r] = l_coarse;
    gap[r] = l_fine - l_coarse;
  });

  const EstimateRecord eg = summarize(gue, n, 0.0, seed, "gue_lambda_max");
  const EstimateRecord el = summarize(lpp_coarse, n, dt, seed, "lpp_grid");
  double gap_mean = 0.0;
  for (double g : gap) gap_mean += g;
  gap_mean /= replicas;

  GueLppComparison cmp;
  cmp.n = n;
  cmp.replicas = replicas;
  cmp.dt = dt;
  cmp.gue_mean = eg.mean;
  cmp.gue_std_error = eg.std_error;
  cmp.lpp_mean = el.mean;
  cmp.lpp_std_error = el.std_error;
  // deficit(dt) = gap / (1 - 2^{-1/2}) under the sqrt(dt) scaling law
  cmp.allowance = std::max(0.0, gap_mean / (1.0 - 1.0 / std::sqrt(2.0)));
  const double combined = std::sqrt(eg.std_error * eg.std_error + el.std_error * el.std_error);
  cmp.within_window = std::abs(cmp.gue_mean - cmp.lpp_mean) <= 3.0 * combined + cmp.allowance;
  cmp.one_sided_ok = cmp.gue_mean >= cmp.lpp_mean - 3.0 * combined;
  cmp.pass = cmp.within_window && cmp.one_sided_ok;
  return cmp;
}

}  // namespace polymerfe
