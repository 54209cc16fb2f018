#ifndef POLYMERFE_VALIDATE_HPP
#define POLYMERFE_VALIDATE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace polymerfe {

struct CheckResult {
  std::string suite;
  std::string check;
  bool passed = false;
  std::string detail;
};

// Suites: specialfn, freeenergy, environment, polymer, queue, rmt, kac, all.
std::vector<std::string> validation_suites();

// Runs one suite (or "all"). Deterministic for a given seed.
// x_grid, when nonempty, overrides the kac suite's grid.
std::vector<CheckResult> run_validation(const std::string& suite, std::uint64_t seed,
                                        int threads = 0,
                                        const std::vector<double>& x_grid = {});

}  // namespace polymerfe

#endif
