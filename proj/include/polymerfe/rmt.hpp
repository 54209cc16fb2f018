#ifndef POLYMERFE_RMT_HPP
#define POLYMERFE_RMT_HPP

#include <cstdint>
#include <vector>

namespace polymerfe {

// Symmetric tridiagonal matrix; offdiag entries are nonnegative.
struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;
};

// Tridiagonal Hermite (beta = 2) model of the GUE spectrum: diag ~ N(0,1),
// offdiag_k ~ chi_{2(n-k)} / sqrt(2). At n = 1 the top eigenvalue is N(0,1),
// matching L_1(1) = B_1.
TridiagonalMatrix sample_gue_tridiag(int n, std::uint64_t seed);

// Eigenvalues of T strictly below x, by the Sturm pivot count.
int sturm_count_below(const TridiagonalMatrix& T, double x);

// Largest eigenvalue: bisection on the Sturm count inside the Gershgorin
// bounds, absolute tolerance 1e-10.
double largest_eigenvalue(const TridiagonalMatrix& T);

struct GueLppComparison {
  int n = 0;
  int replicas = 0;
  double dt = 0.0;
  double gue_mean = 0.0;
  double gue_std_error = 0.0;
  double lpp_mean = 0.0;
  double lpp_std_error = 0.0;
  double allowance = 0.0;   // Richardson estimate of the grid deficit E L(cont) - E L(dt)
  bool within_window = false;  // |means| gap <= 3 combined se + allowance
  bool one_sided_ok = false;   // gue_mean >= lpp_mean - 3 combined se (grid bias is one-sided)
  bool pass = false;
};

// Compares lambda_max(GUE_n) with the grid L_n(1) over `replicas` independent
// draws of each. The LPP side is sampled at dt/2 and subsampled to dt, so the
// per-replica refinement gap gives a coupled Richardson allowance.
GueLppComparison gue_vs_lpp(int n, int replicas, double dt, std::uint64_t seed,
                            int threads = 0);

}  // namespace polymerfe

#endif
