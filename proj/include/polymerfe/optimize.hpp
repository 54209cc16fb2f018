#ifndef POLYMERFE_OPTIMIZE_HPP
#define POLYMERFE_OPTIMIZE_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

namespace polymerfe {

// Golden-section maximization of a unimodal function on [lo, hi].
// Returns (argmax, max).
template <typename F>
std::pair<double, double> golden_section_max(F f, double lo, double hi,
                                             double xtol = 1e-10, int max_iter = 200) {
  const double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// Safeguarded Newton for g(x) = 0 on a bracket [lo, hi] with g(lo) <= 0 <= g(hi)
// (g increasing). Falls back to bisection whenever the Newton step leaves the
// bracket. Converges when |g| <= tol or the bracket collapses to rounding.
template <typename G, typename DG>
double newton_bracketed(G g, DG dg, double x0, double lo, double hi,
                        double tol, int max_iter = 200) {
  double x = x0;
  if (!(x > lo) || !(x < hi)) x = 0.5 * (lo + hi);
  for (int i = 0; i < max_iter; ++i) {
    const double gx = g(x);
    if (std::abs(gx) <= tol) return x;
    if (gx < 0.0) lo = x; else hi = x;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(x))) return x;
    const double d = dg(x);
    double next = (d != 0.0) ? x - gx / d : 0.5 * (lo + hi);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  throw std::runtime_error("newton_bracketed: no convergence in iteration budget");
}

}  // namespace polymerfe

#endif
