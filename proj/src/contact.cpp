#include "pantograph/contact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pantograph/errors.hpp"
#include "pantograph/units.hpp"

namespace pantograph {

namespace {

double interpolate(const std::vector<std::pair<double, double>>& pts, double at) {
  if (at <= pts.front().first) return pts.front().second;
  if (at >= pts.back().first) return pts.back().second;
  auto upper = std::upper_bound(pts.begin(), pts.end(), at,
                                [](double v, const auto& p) { return v < p.first; });
  auto lower = upper - 1;
  const double w = (at - lower->first) / (upper->first - lower->first);
  return lower->second + w * (upper->second - lower->second);
}

void require_increasing(const std::vector<std::pair<double, double>>& pts, const char* what) {
  if (pts.empty()) {
    throw ConfigError(std::string(what) + " needs at least one point");
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!std::isfinite(pts[k].first) || !std::isfinite(pts[k].second)) {
      throw ConfigError(std::string(what) + " contains a non-finite value");
    }
    if (k > 0 && !(pts[k].first > pts[k - 1].first)) {
      std::ostringstream msg;
      msg << what << " abscissae must be strictly increasing (entry " << k << ")";
      throw ConfigError(msg.str());
    }
  }
}

void validate_probe(const ProbeModel& probe) {
  if (const auto* p = std::get_if<PantographProbe>(&probe)) {
    p->config.validate();
    p->spring.validate();
    p->loss.validate();
    if (!p->config.is_ideal_vertical()) {
      throw UnsupportedGeometryError("contact simulation needs equal links (l1 == l2)");
    }
  } else {
    std::get<SpringProbe>(probe).validate();
  }
}

double gap_at(const ContactScenario& scenario, std::size_t k) {
  const double t = static_cast<double>(k) * scenario.dt;
  const double x = scenario.start_x + scenario.heave.drift_speed * t;
  return scenario.surface.height_at(x) - scenario.heave.offset_at(t);
}

std::vector<Direction> directions_from_gaps(const std::vector<double>& gaps) {
  std::vector<Direction> out(gaps.size(), Direction::extending);
  for (std::size_t k = 1; k < gaps.size(); ++k) {
    if (gaps[k] > gaps[k - 1]) {
      out[k] = Direction::extending;
    } else if (gaps[k] < gaps[k - 1]) {
      out[k] = Direction::compressing;
    } else {
      out[k] = out[k - 1];
    }
  }
  return out;
}

std::vector<double> draw_noise(const ProbeModel& probe, std::size_t n) {
  if (const auto* p = std::get_if<PantographProbe>(&probe)) {
    MeasurementNoise noise(p->loss);
    return noise.samples(n);
  }
  return std::vector<double>(n, 0.0);
}

ContactSolution solve_step(const ProbeModel& probe, double gap, Direction direction,
                           double noise) {
  if (const auto* p = std::get_if<PantographProbe>(&probe)) {
    return solve_contact(p->config, p->spring, p->loss, gap, direction, noise);
  }
  return solve_contact(std::get<SpringProbe>(probe), gap);
}

TimeSample make_sample(const ContactScenario& scenario, std::size_t k, double gap,
                       const ContactSolution& contact) {
  return {static_cast<double>(k) * scenario.dt, gap,     contact.theta1,
          contact.force,                        scenario.band.contains(contact.force),
          contact.saturated};
}

}  // namespace

void SurfaceProfile::validate() const { require_increasing(points, "surface profile"); }

double SurfaceProfile::height_at(double x) const { return interpolate(points, x); }

SurfaceProfile SurfaceProfile::flat(double height) { return {{{0.0, height}}}; }

const char* to_string(HeaveKind k) {
  switch (k) {
    case HeaveKind::constant:
      return "constant";
    case HeaveKind::sinusoid:
      return "sinusoid";
    case HeaveKind::samples:
      return "samples";
  }
  return "unknown";
}

void HeaveTrajectory::validate() const {
  if (!std::isfinite(mean) || !std::isfinite(amplitude) || !std::isfinite(phase) ||
      !std::isfinite(drift_speed)) {
    throw ConfigError("heave parameters must be finite");
  }
  if (kind == HeaveKind::sinusoid && !(period > 0.0)) {
    throw ConfigError("heave period must be positive");
  }
  if (kind == HeaveKind::samples) {
    require_increasing(samples, "heave samples");
  }
}

double HeaveTrajectory::offset_at(double t) const {
  switch (kind) {
    case HeaveKind::constant:
      return mean;
    case HeaveKind::sinusoid:
      return mean + amplitude * std::sin(2.0 * kPi * t / period + phase);
    case HeaveKind::samples:
      return interpolate(samples, t);
  }
  return mean;
}

HeaveTrajectory HeaveTrajectory::constant(double offset) {
  HeaveTrajectory h;
  h.kind = HeaveKind::constant;
  h.mean = offset;
  return h;
}

HeaveTrajectory HeaveTrajectory::sinusoid(double mean, double amplitude, double period,
                                          double phase) {
  HeaveTrajectory h;
  h.kind = HeaveKind::sinusoid;
  h.mean = mean;
  h.amplitude = amplitude;
  h.period = period;
  h.phase = phase;
  return h;
}

ForceBand ForceBand::around(double nominal, double fraction) {
  return {nominal * (1.0 - fraction), nominal * (1.0 + fraction)};
}

void SpringProbe::validate() const {
  if (!(stiffness >= 0.0) || !(preload >= 0.0) || !std::isfinite(stiffness) ||
      !std::isfinite(preload) || !std::isfinite(mount_extension)) {
    throw ConfigError("spring probe stiffness and preload must be non-negative and finite");
  }
}

ContactSolution solve_contact(const PantographConfig& config, const SpringModel& spring,
                              const LossModel& loss, double gap, Direction direction,
                              double noise_sample) {
  const double y = gap - config.tip_offset;
  if (y > 2.0 * config.l1) {
    return {0.0, std::nullopt, false};
  }
  const bool saturated = y < config.min_height;
  const double theta1 = inverse_kinematics(config, saturated ? config.min_height : y).theta1;
  const double force = apply_measurement_noise(
      transmitted_force(config, theta1, spring, loss, direction), noise_sample);
  return {force, theta1, saturated};
}

ContactSolution solve_contact(const SpringProbe& probe, double gap) {
  if (gap > probe.mount_extension) {
    return {0.0, std::nullopt, false};
  }
  const double compression = probe.mount_extension - gap;
  return {std::max(0.0, spring_probe_force(probe.stiffness, probe.preload, compression)),
          std::nullopt, false};
}

void ContactScenario::validate() const {
  surface.validate();
  heave.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("time step dt must be positive");
  }
  if (!(duration >= dt) || !std::isfinite(duration)) {
    throw ConfigError("duration must be at least one time step");
  }
  if (!(band.low <= band.high)) {
    throw ConfigError("force band needs low <= high");
  }
  if (!(required_dwell >= 0.0)) {
    throw ConfigError("required dwell must be non-negative");
  }
  if (!std::isfinite(start_x)) {
    throw ConfigError("start position must be finite");
  }
}

std::size_t ContactScenario::step_count() const {
  return static_cast<std::size_t>(std::llround(duration / dt));
}

DwellReport summarize_dwell(const std::vector<TimeSample>& samples, double dt,
                            const ForceBand& band, double required_dwell) {
  DwellReport report;
  report.band = band;
  report.required_dwell = required_dwell;

  std::size_t in_band = 0;
  std::size_t run = 0;
  std::size_t longest = 0;
  for (std::size_t k = 0; k < samples.size();) {
    if (samples[k].force <= 0.0) {
      ++k;
      continue;
    }
    const std::size_t first = k;
    ContactEvent event;
    event.min_force = samples[k].force;
    event.max_force = samples[k].force;
    double sum = 0.0;
    for (; k < samples.size() && samples[k].force > 0.0; ++k) {
      const double f = samples[k].force;
      event.min_force = std::min(event.min_force, f);
      event.max_force = std::max(event.max_force, f);
      event.saturated = event.saturated || samples[k].saturated;
      sum += f;
    }
    event.start = static_cast<double>(first) * dt;
    event.end = static_cast<double>(k) * dt;
    event.mean_force = std::clamp(sum / static_cast<double>(k - first), event.min_force,
                                  event.max_force);
    report.events.push_back(event);
  }
  for (const auto& s : samples) {
    if (s.in_band) {
      ++in_band;
      longest = std::max(longest, ++run);
    } else {
      run = 0;
    }
  }
  report.longest_in_band_dwell = static_cast<double>(longest) * dt;
  report.in_band_fraction =
      samples.empty() ? 0.0 : static_cast<double>(in_band) / static_cast<double>(samples.size());
  report.measurement_achieved = report.longest_in_band_dwell >= required_dwell;
  return report;
}

SimulationResult simulate(const ProbeModel& probe, const ContactScenario& scenario) {
  scenario.validate();
  validate_probe(probe);
  const std::size_t n = scenario.step_count();

  std::vector<double> gaps(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    gaps[k] = gap_at(scenario, static_cast<std::size_t>(k));
  }
  const std::vector<Direction> directions = directions_from_gaps(gaps);
  const std::vector<double> noise = draw_noise(probe, n);

  SimulationResult result;
  result.samples.resize(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const ContactSolution contact = solve_step(probe, gaps[k], directions[k], noise[k]);
    result.samples[k] = make_sample(scenario, static_cast<std::size_t>(k), gaps[k], contact);
  }
  result.report =
      summarize_dwell(result.samples, scenario.dt, scenario.band, scenario.required_dwell);
  return result;
}

SimulationResult simulate_serial(const ProbeModel& probe, const ContactScenario& scenario) {
  scenario.validate();
  validate_probe(probe);
  const std::size_t n = scenario.step_count();

  MeasurementNoise noise(std::holds_alternative<PantographProbe>(probe)
                             ? std::get<PantographProbe>(probe).loss
                             : LossModel::lossless());
  SimulationResult result;
  result.samples.reserve(n);
  double previous_gap = 0.0;
  Direction direction = Direction::extending;
  for (std::size_t k = 0; k < n; ++k) {
    const double gap = gap_at(scenario, k);
    if (k > 0 && gap > previous_gap) direction = Direction::extending;
    if (k > 0 && gap < previous_gap) direction = Direction::compressing;
    previous_gap = gap;
    const ContactSolution contact = solve_step(probe, gap, direction, noise.sample());
    result.samples.push_back(make_sample(scenario, k, gap, contact));
  }
  result.report =
      summarize_dwell(result.samples, scenario.dt, scenario.band, scenario.required_dwell);
  return result;
}

ProbeComparison compare_probes(const PantographProbe& pantograph, const SpringProbe& spring_probe,
                               const ContactScenario& scenario) {
  return {simulate(pantograph, scenario), simulate(spring_probe, scenario)};
}

}  // namespace pantograph
