#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pantograph {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs every cross-module invariant (kinematic closure, torque law, loss
/// monotonicity, contact partition, design reference agreement, ...).
/// Random poses come from a generator seeded with `seed`.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 7);

/// Evenly spaced (0, hi]: hi * (k + 1) / n for k = 0..n-1.
std::vector<double> open_closed_grid(double hi, std::size_t n);

}  // namespace pantograph
