#ifndef POLYMERFE_POLYMER_HPP
#define POLYMERFE_POLYMER_HPP

#include <cstdint>
#include <vector>

#include "polymerfe/environment.hpp"

namespace polymerfe {

enum class TransferMode { log_sum_exp, max_plus };

// State of one level of the transfer recursion over a grid window.
// log_sum_exp: log phi_k(t) of the partition recursion (log-domain, left
// endpoint Riemann weights, strictly ordered simplex). max_plus: L_k(t).
struct TransferProfile {
  int level = 0;
  TransferMode mode = TransferMode::log_sum_exp;
  int i_lo = 0;  // grid window [i_lo, i_hi] on the backing lattice
  int i_hi = 0;
  std::vector<double> log_values;  // indexed relative to i_lo
};

TransferProfile transfer_initial(const BrownianLattice& lat, double beta,
                                 TransferMode mode, int i_lo, int i_hi);
// Advances to the next level using the given path's values.
void transfer_advance(TransferProfile& prof, const BrownianLattice& lat,
                      double beta, int path);

// log of the discretized Z_n(beta) on a lattice spanning [0, n]:
// phi_1(t) = exp(beta B^1_{(0,t)}), phi_k(t) = int_0^t phi_{k-1}(s)
// exp(beta B^k_{(s,t)}) ds, each level in O(grid) by a running log-sum-exp
// over phi_{k-1}(s) exp(-beta B^k_s). Returns log phi_n(n).
double log_partition_dp(const BrownianLattice& lat, double beta, int n);
double log_partition_dp_window(const BrownianLattice& lat, double beta, int n,
                               int i_lo, int i_hi);

// Grid-restricted L_n(t) = sup_{0 <= s_1 <= ... <= s_{n-1} <= t} of the path
// energy, max-plus recursion with a running max per level.
double lpp_dp(const BrownianLattice& lat, int n, double t);
double lpp_dp_window(const BrownianLattice& lat, int n, int i_lo, int i_hi);

// gamma_n(x) = (1/n) log Z_n(x): the partition DP over [x n, 0] at unit beta.
double gamma_n_dp(const BrownianLattice& lat, double x, int n);

// Replica-parallel Monte Carlo of (1/n) log Z_n(beta); replica r draws an
// independent lattice from stream hash(seed, r).
EstimateRecord estimate_free_energy(double beta, int n, double dt, int replicas,
                                    std::uint64_t seed, int threads = 0);

// Same for (1/n) L_n(n).
EstimateRecord lpp_limit_estimate(int n, double dt, int replicas,
                                  std::uint64_t seed, int threads = 0);

struct KacDiagnostic {
  double m = 0.0;
  int n = 0;
  double log_xi = 0.0;     // (1/n) log Xi_n(m)
  double argmax_x = 0.0;   // maximizer of m x + gamma_n(x) on the grid
  double mass_window = 0.0;  // Kac mass within +-0.25 of -Psi_1(m)
};

// Grand-canonical diagnostics from a single environment: gamma_n on x_grid,
// (1/n) log Xi_n(m) by log-sum-exp trapezoid quadrature, the tilted argmax,
// and the concentration mass. Throws if the argmax sits on the grid boundary.
// Every x*n must lie on the dt-grid.
KacDiagnostic grand_partition(double m, int n, double dt,
                              const std::vector<double>& x_grid,
                              std::uint64_t seed, int threads = 0);

struct MomentIdentityResult {
  double lhs = 0.0;            // MC average of exp(beta E_n) over snapped uniforms
  double rhs = 0.0;            // (n-1)!/n^{n-1} * Z_n(beta) from the DP
  double lhs_std_error = 0.0;  // MC standard error of lhs
  long mc_samples = 0;
};

// Lemma-style conditional moment identity on one lattice: sorted uniforms on
// [0, n] are snapped to their grid cell (floor), so the sampled measure
// coincides with the DP's left-endpoint weights.
MomentIdentityResult moment_identity_check(const BrownianLattice& lat, double beta,
                                           int n, long mc_samples, std::uint64_t seed);

// Default grid step: min(0.025, 1/(4 sqrt n)).
double default_dt(int n);

}  // namespace polymerfe

#endif
