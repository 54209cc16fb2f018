#ifndef POLYMERFE_ENVIRONMENT_HPP
#define POLYMERFE_ENVIRONMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace polymerfe {

// The quenched environment: n independent standard Brownian paths sampled on
// a uniform grid, pinned to zero at the anchor. Immutable after construction;
// safe for unrestricted concurrent readers.
class BrownianLattice {
 public:
  // Samples the paths. Each path's increments come from an independent stream
  // derived as hash(seed, path); identical inputs give identical lattices.
  BrownianLattice(int n_paths, double t_min, double t_max, double dt,
                  std::uint64_t seed, double anchor_time);

  // Builds a lattice from explicit path values (tests and oracles).
  static BrownianLattice from_values(std::vector<std::vector<double>> values,
                                     double t_min, double dt, int anchor_index,
                                     std::uint64_t seed = 0);

  int n_paths() const { return n_paths_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double dt() const { return dt_; }
  int grid_size() const { return grid_size_; }  // number of dt segments
  int anchor_index() const { return anchor_index_; }
  std::uint64_t seed() const { return seed_; }

  // Path value at grid index j (time t_min + j*dt), j in [0, grid_size].
  double value(int path, int index) const { return values_[static_cast<std::size_t>(path) * stride_ + index]; }
  const double* path_values(int path) const { return values_.data() + static_cast<std::size_t>(path) * stride_; }

  // Grid index of an on-grid time; throws std::out_of_range for off-grid.
  int index_of(double t) const;
  double time_at(int index) const { return t_min_ + index * dt_; }

  // B^{(path)}_{(s,t)} = B_t - B_s for on-grid s, t.
  double increment(int path, double s, double t) const;

  // Copy with every path value negated (min-plus identities).
  BrownianLattice negated() const;

  // Binary dump: n_paths, t_min, t_max, dt, seed as little-endian 64-bit
  // fields, then row-major 64-bit path values.
  void dump(std::ostream& os) const;
  static BrownianLattice load(std::istream& is);

 private:
  BrownianLattice() = default;
  void check_path(int path) const;

  int n_paths_ = 0;
  double t_min_ = 0.0;
  double t_max_ = 0.0;
  double dt_ = 0.0;
  int grid_size_ = 0;
  int anchor_index_ = 0;
  std::uint64_t seed_ = 0;
  std::size_t stride_ = 0;
  std::vector<double> values_;
};

// Monte Carlo scalar estimate with provenance.
struct EstimateRecord {
  double mean = 0.0;
  double std_error = 0.0;
  int replicas = 0;
  int n = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::string quantity;
};

// mean / (sample sd)/sqrt(replicas) over a vector of per-replica values.
EstimateRecord summarize(const std::vector<double>& values, int n, double dt,
                         std::uint64_t seed, std::string quantity);

}  // namespace polymerfe

#endif
