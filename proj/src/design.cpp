#include "pantograph/design.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <sstream>
#include <tuple>

#include "pantograph/errors.hpp"
#include "pantograph/linkage.hpp"
#include "pantograph/statics.hpp"

namespace pantograph {

namespace {

constexpr std::size_t kMaxCandidates = 50'000'000;

void require_bounds(const Bounds& b, const char* name) {
  if (!(std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo > 0.0 && b.lo <= b.hi)) {
    std::ostringstream msg;
    msg << name << " bounds must satisfy 0 < lo <= hi (got [" << b.lo << ", " << b.hi << "])";
    throw ConfigError(msg.str());
  }
}

DesignSolution to_solution(const CandidateEvaluation& e, std::size_t evaluated) {
  return {e.candidate.link,
          e.candidate.lever,
          e.candidate.tension,
          e.achieved_force,
          e.footprint,
          e.feasible(),
          violations_from_mask(e.violations),
          evaluated};
}

struct Axes {
  std::vector<double> links;
  std::vector<double> levers;
  const std::vector<double>& tensions;

  [[nodiscard]] std::size_t size() const { return links.size() * levers.size() * tensions.size(); }

  [[nodiscard]] DesignCandidate at(std::size_t flat) const {
    const std::size_t nt = tensions.size();
    const std::size_t nr = levers.size();
    return {links[flat / (nr * nt)], levers[(flat / nt) % nr], tensions[flat % nt]};
  }
};

Axes make_axes(const DesignSpec& spec) {
  spec.validate();
  return {grid_axis(spec.link_bounds, spec.grid_step), grid_axis(spec.lever_bounds, spec.grid_step),
          spec.tensions};
}

}  // namespace

void DesignSpec::validate() const {
  if (!(std::isfinite(target_force) && target_force >= 0.0)) {
    throw ConfigError("target force must be non-negative");
  }
  if (!(std::isfinite(stroke_min) && std::isfinite(stroke_max) && stroke_min >= 0.0 &&
        stroke_min < stroke_max)) {
    throw ConfigError("stroke needs 0 <= min < max");
  }
  if (!(std::isfinite(envelope_diameter) && envelope_diameter > 0.0)) {
    throw ConfigError("envelope diameter must be positive");
  }
  if (tensions.empty()) {
    throw ConfigError("at least one spring tension is required");
  }
  for (double t : tensions) {
    if (!(std::isfinite(t) && t >= 0.0)) {
      throw ConfigError("spring tensions must be non-negative");
    }
  }
  require_bounds(link_bounds, "link length");
  require_bounds(lever_bounds, "lever length");
  if (!(std::isfinite(grid_step) && grid_step > 0.0)) {
    throw ConfigError("grid step must be positive");
  }
  if (!(force_tolerance >= 0.0) || !(clearance_margin >= 0.0) ||
      !(min_height_fraction >= 0.0 && min_height_fraction < 1.0)) {
    throw ConfigError(
        "force tolerance and clearance must be non-negative, min height fraction in [0, 1)");
  }
  const double per_axis_link = (link_bounds.hi - link_bounds.lo) / grid_step + 1.0;
  const double per_axis_lever = (lever_bounds.hi - lever_bounds.lo) / grid_step + 1.0;
  if (per_axis_link * per_axis_lever * static_cast<double>(tensions.size()) >
      static_cast<double>(kMaxCandidates)) {
    throw ConfigError("design grid too large; coarsen grid_step or narrow the bounds");
  }
}

const char* to_string(Violation v) {
  switch (v) {
    case Violation::stroke_exceeds_reach:
      return "stroke exceeds 2*l1";
    case Violation::stroke_below_fold:
      return "stroke minimum below folded height";
    case Violation::footprint_exceeds_envelope:
      return "footprint exceeds envelope";
    case Violation::force_out_of_tolerance:
      return "force outside tolerance";
  }
  return "unknown";
}

std::vector<Violation> violations_from_mask(std::uint8_t mask) {
  std::vector<Violation> out;
  for (auto v : {Violation::stroke_exceeds_reach, Violation::stroke_below_fold,
                 Violation::footprint_exceeds_envelope, Violation::force_out_of_tolerance}) {
    if (mask & static_cast<std::uint8_t>(v)) out.push_back(v);
  }
  return out;
}

int CandidateEvaluation::violation_count() const { return std::popcount(violations); }

double solve_lever(double target_force, double input_force, double l2) {
  if (!(l2 > 0.0) || !(target_force >= 0.0) || !(input_force >= 0.0)) {
    throw DomainError("solve_lever needs l2 > 0 and non-negative forces");
  }
  if (target_force == 0.0) {
    return 0.0;
  }
  if (input_force == 0.0) {
    throw InfeasibleError("no lever length turns a zero input force into a positive target");
  }
  return 2.0 * l2 * target_force / input_force;
}

std::vector<double> grid_axis(const Bounds& bounds, double step) {
  if (!(std::isfinite(bounds.lo) && std::isfinite(bounds.hi) && bounds.lo <= bounds.hi)) {
    throw ConfigError("grid bounds need lo <= hi");
  }
  if (!(std::isfinite(step) && step > 0.0)) {
    throw ConfigError("grid step must be positive");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((bounds.hi - bounds.lo) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = bounds.lo + static_cast<double>(k) * step;
  }
  return out;
}

CandidateEvaluation evaluate_candidate(const DesignSpec& spec, const DesignCandidate& c) {
  CandidateEvaluation e{c, 0.0, 0.0, 0};
  const double reach = 2.0 * c.link;
  if (spec.stroke_max > reach) {
    e.violations |= static_cast<std::uint8_t>(Violation::stroke_exceeds_reach);
  }
  if (spec.stroke_min < spec.min_height_fraction * reach) {
    e.violations |= static_cast<std::uint8_t>(Violation::stroke_below_fold);
  }
  e.footprint = c.link + c.lever + spec.clearance_margin;
  if (e.footprint > spec.envelope_diameter) {
    e.violations |= static_cast<std::uint8_t>(Violation::footprint_exceeds_envelope);
  }
  e.achieved_force = ideal_output_force(PantographConfig{c.link, c.link, c.lever}, c.tension);
  if (std::abs(e.achieved_force - spec.target_force) > spec.force_tolerance * spec.target_force) {
    e.violations |= static_cast<std::uint8_t>(Violation::force_out_of_tolerance);
  }
  return e;
}

bool ranks_before(const CandidateEvaluation& a, const CandidateEvaluation& b) {
  const int va = a.violation_count();
  const int vb = b.violation_count();
  return std::tie(va, a.footprint, a.candidate.lever, a.candidate.link, a.candidate.tension) <
         std::tie(vb, b.footprint, b.candidate.lever, b.candidate.link, b.candidate.tension);
}

std::size_t candidate_count(const DesignSpec& spec) { return make_axes(spec).size(); }

DesignSolution solve_design(const DesignSpec& spec) {
  const Axes axes = make_axes(spec);
  const auto n = static_cast<std::ptrdiff_t>(axes.size());

  std::optional<CandidateEvaluation> best;
#pragma omp parallel
  {
    std::optional<CandidateEvaluation> local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const CandidateEvaluation e =
          evaluate_candidate(spec, axes.at(static_cast<std::size_t>(i)));
      if (!local || ranks_before(e, *local)) local = e;
    }
    // Strict total order, so the merge result is independent of thread timing.
#pragma omp critical(pantograph_design_reduce)
    {
      if (local && (!best || ranks_before(*local, *best))) best = local;
    }
  }
  return to_solution(*best, axes.size());
}

DesignSolution solve_design_reference(const DesignSpec& spec) {
  const Axes axes = make_axes(spec);
  std::vector<CandidateEvaluation> all;
  all.reserve(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) {
    all.push_back(evaluate_candidate(spec, axes.at(i)));
  }
  const auto best = std::min_element(all.begin(), all.end(), ranks_before);
  return to_solution(*best, all.size());
}

}  // namespace pantograph
