#pragma once

// Inverse design of an equal-link pantograph for a target contact force.
//
// Candidates are the Cartesian product of a link-length grid, a lever-length
// grid and the available spring tensions. A candidate is feasible when
//   (a) the stroke fits the reach: stroke.max <= 2*l and
//       stroke.min >= min_height_fraction * 2*l,
//   (b) the folded footprint l + r + clearance fits the deployment envelope,
//   (c) f_i * r / (2*l) is within force_tolerance of the target.
// The optimum minimises (footprint, r, l, tension) lexicographically. When
// nothing is feasible the candidate with the fewest violations is reported
// under the same ordering.

#include <cstdint>
#include <string>
#include <vector>

namespace pantograph {

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

struct DesignSpec {
  double target_force = 1.8633;  // N
  double stroke_min = 0.10;      // m
  double stroke_max = 0.35;      // m
  double envelope_diameter = 0.30;  // m, deployment hole
  std::vector<double> tensions{14.906};  // N
  Bounds link_bounds{0.18, 0.22};
  Bounds lever_bounds{0.03, 0.08};

  double grid_step = 1e-3;            // m
  double force_tolerance = 0.02;      // relative
  double clearance_margin = 0.02;     // m
  double min_height_fraction = 0.2;

  /// Throws ConfigError.
  void validate() const;
};

enum class Violation : std::uint8_t {
  stroke_exceeds_reach = 1u << 0,
  stroke_below_fold = 1u << 1,
  footprint_exceeds_envelope = 1u << 2,
  force_out_of_tolerance = 1u << 3,
};

const char* to_string(Violation v);

/// Violations in declaration order for a bitmask of Violation flags.
std::vector<Violation> violations_from_mask(std::uint8_t mask);

struct DesignCandidate {
  double link = 0.0;     // l1 = l2, m
  double lever = 0.0;    // r, m
  double tension = 0.0;  // f_i, N
};

struct CandidateEvaluation {
  DesignCandidate candidate;
  double achieved_force = 0.0;
  double footprint = 0.0;
  std::uint8_t violations = 0;

  [[nodiscard]] bool feasible() const { return violations == 0; }
  [[nodiscard]] int violation_count() const;
};

struct DesignSolution {
  double link = 0.0;
  double lever = 0.0;
  double tension = 0.0;
  double achieved_force = 0.0;
  double footprint = 0.0;
  bool feasible = false;
  std::vector<Violation> violations;
  std::size_t candidates_evaluated = 0;

  friend bool operator==(const DesignSolution&, const DesignSolution&) = default;
};

/// Lever length giving `target_force` from `input_force` on link `l2`:
/// r = 2 * l2 * f_o / f_i. Throws InfeasibleError when f_i == 0 and f_o > 0.
double solve_lever(double target_force, double input_force, double l2);

/// lo, lo + step, ... while <= hi (within 1e-9 * step). Values are lo + k*step.
std::vector<double> grid_axis(const Bounds& bounds, double step);

CandidateEvaluation evaluate_candidate(const DesignSpec& spec, const DesignCandidate& candidate);

/// True when `a` ranks strictly before `b`.
bool ranks_before(const CandidateEvaluation& a, const CandidateEvaluation& b);

std::size_t candidate_count(const DesignSpec& spec);

/// Parallel grid search with a deterministic reduction over the total order.
DesignSolution solve_design(const DesignSpec& spec);

/// Serial reference: materialises every evaluation, then picks the minimum.
DesignSolution solve_design_reference(const DesignSpec& spec);

}  // namespace pantograph
