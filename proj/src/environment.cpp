#include "polymerfe/environment.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "polymerfe/rng.hpp"

namespace polymerfe {

namespace {

int checked_grid_size(double t_min, double t_max, double dt) {
  if (!(t_min < t_max)) throw std::invalid_argument("BrownianLattice: t_min must be < t_max");
  if (!(dt > 0.0)) throw std::invalid_argument("BrownianLattice: dt must be > 0");
  const double span = t_max - t_min;
  const double steps = span / dt;
  const long rounded = std::lround(steps);
  if (rounded < 1 || std::abs(steps - static_cast<double>(rounded)) > 1e-9 * std::max(1.0, steps)) {
    throw std::invalid_argument("BrownianLattice: dt does not divide t_max - t_min");
  }
  return static_cast<int>(rounded);
}

}  // namespace

BrownianLattice::BrownianLattice(int n_paths, double t_min, double t_max, double dt,
                                 std::uint64_t seed, double anchor_time) {
  if (n_paths < 1) throw std::invalid_argument("BrownianLattice: n_paths must be >= 1");
  n_paths_ = n_paths;
  t_min_ = t_min;
  t_max_ = t_max;
  dt_ = dt;
  grid_size_ = checked_grid_size(t_min, t_max, dt);
  seed_ = seed;
  stride_ = static_cast<std::size_t>(grid_size_) + 1;

  const double anchor_steps = (anchor_time - t_min) / dt;
  const long aidx = std::lround(anchor_steps);
  if (aidx < 0 || aidx > grid_size_ ||
      std::abs(anchor_steps - static_cast<double>(aidx)) > 1e-9 * std::max(1.0, std::abs(anchor_steps))) {
    throw std::invalid_argument("BrownianLattice: anchor_time must lie on the grid");
  }
  anchor_index_ = static_cast<int>(aidx);

  values_.resize(static_cast<std::size_t>(n_paths_) * stride_);
  const double sd = std::sqrt(dt);
  for (int p = 0; p < n_paths_; ++p) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(p)));
    double* row = values_.data() + static_cast<std::size_t>(p) * stride_;
    // One increment per grid segment, prefix-summed and re-anchored so that
    // row[anchor] = 0 exactly.
    row[0] = 0.0;
    for (int j = 0; j < grid_size_; ++j) row[j + 1] = row[j] + sd * rng.normal();
    const double at_anchor = row[anchor_index_];
    for (int j = 0; j <= grid_size_; ++j) row[j] -= at_anchor;
    row[anchor_index_] = 0.0;
  }
}

BrownianLattice BrownianLattice::from_values(std::vector<std::vector<double>> values,
                                             double t_min, double dt, int anchor_index,
                                             std::uint64_t seed) {
  if (values.empty()) throw std::invalid_argument("from_values: need at least one path");
  const std::size_t cols = values[0].size();
  if (cols < 2) throw std::invalid_argument("from_values: need at least two grid points");
  for (const auto& row : values) {
    if (row.size() != cols) throw std::invalid_argument("from_values: ragged rows");
  }
  BrownianLattice lat;
  lat.n_paths_ = static_cast<int>(values.size());
  lat.grid_size_ = static_cast<int>(cols) - 1;
  lat.t_min_ = t_min;
  lat.dt_ = dt;
  lat.t_max_ = t_min + lat.grid_size_ * dt;
  lat.seed_ = seed;
  lat.stride_ = cols;
  if (anchor_index < 0 || anchor_index > lat.grid_size_) {
    throw std::invalid_argument("from_values: anchor_index out of range");
  }
  lat.anchor_index_ = anchor_index;
  lat.values_.reserve(values.size() * cols);
  for (auto& row : values) {
    const double shift = row[anchor_index];
    for (double v : row) lat.values_.push_back(v - shift);
  }
  return lat;
}

void BrownianLattice::check_path(int path) const {
  if (path < 0 || path >= n_paths_) throw std::out_of_range("BrownianLattice: path index out of range");
}

int BrownianLattice::index_of(double t) const {
  const double steps = (t - t_min_) / dt_;
  const long idx = std::lround(steps);
  if (idx < 0 || idx > grid_size_ ||
      std::abs(steps - static_cast<double>(idx)) > 1e-9 * std::max(1.0, std::abs(steps))) {
    throw std::out_of_range("BrownianLattice: time is off-grid");
  }
  return static_cast<int>(idx);
}

double BrownianLattice::increment(int path, double s, double t) const {
  check_path(path);
  const int js = index_of(s);
  const int jt = index_of(t);
  return value(path, jt) - value(path, js);
}

BrownianLattice BrownianLattice::negated() const {
  BrownianLattice lat(*this);
  for (double& v : lat.values_) v = -v;
  return lat;
}

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(buf), 8);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(os, bits);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  if (!is) throw std::runtime_error("BrownianLattice::load: truncated stream");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) {
  const std::uint64_t bits = get_u64(is);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void BrownianLattice::dump(std::ostream& os) const {
  put_u64(os, static_cast<std::uint64_t>(n_paths_));
  put_f64(os, t_min_);
  put_f64(os, t_max_);
  put_f64(os, dt_);
  put_u64(os, seed_);
  for (double v : values_) put_f64(os, v);
}

BrownianLattice BrownianLattice::load(std::istream& is) {
  BrownianLattice lat;
  lat.n_paths_ = static_cast<int>(get_u64(is));
  lat.t_min_ = get_f64(is);
  lat.t_max_ = get_f64(is);
  lat.dt_ = get_f64(is);
  lat.seed_ = get_u64(is);
  lat.grid_size_ = checked_grid_size(lat.t_min_, lat.t_max_, lat.dt_);
  lat.stride_ = static_cast<std::size_t>(lat.grid_size_) + 1;
  lat.values_.resize(static_cast<std::size_t>(lat.n_paths_) * lat.stride_);
  for (double& v : lat.values_) v = get_f64(is);
  // The header carries no anchor; recover it as the column pinned to zero on
  // every path.
  lat.anchor_index_ = 0;
  for (int j = 0; j <= lat.grid_size_; ++j) {
    bool all_zero = true;
    for (int p = 0; p < lat.n_paths_ && all_zero; ++p) {
      all_zero = lat.value(p, j) == 0.0;
    }
    if (all_zero) {
      lat.anchor_index_ = j;
      break;
    }
  }
  return lat;
}

EstimateRecord summarize(const std::vector<double>& values, int n, double dt,
                         std::uint64_t seed, std::string quantity) {
  if (values.size() < 2) throw std::invalid_argument("summarize: need >= 2 replicas");
  EstimateRecord rec;
  rec.replicas = static_cast<int>(values.size());
  rec.n = n;
  rec.dt = dt;
  rec.seed = seed;
  rec.quantity = std::move(quantity);
  double sum = 0.0;
  for (double v : values) sum += v;
  rec.mean = sum / rec.replicas;
  double ss = 0.0;
  for (double v : values) ss += (v - rec.mean) * (v - rec.mean);
  rec.std_error = std::sqrt(ss / (rec.replicas - 1)) / std::sqrt(static_cast<double>(rec.replicas));
  return rec;
}

}  // namespace polymerfe
