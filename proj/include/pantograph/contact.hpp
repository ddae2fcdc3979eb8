#pragma once

// Quasi-static probe/surface contact under vehicle heave.
//
// The surface is rigid and the linkage massless, so whenever the gap between
// the vehicle base and the surface lies inside the stroke the probe height
// equals the gap and the contact force follows from statics alone.

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "pantograph/linkage.hpp"
#include "pantograph/statics.hpp"

namespace pantograph {

/// Piecewise-linear surface height over horizontal position, held constant
/// beyond the first and last points.
struct SurfaceProfile {
  std::vector<std::pair<double, double>> points;  // (x m, height m)

  void validate() const;
  [[nodiscard]] double height_at(double x) const;

  static SurfaceProfile flat(double height);
};

enum class HeaveKind { constant, sinusoid, samples };

const char* to_string(HeaveKind k);

/// Vertical offset of the vehicle base over time, plus horizontal drift.
struct HeaveTrajectory {
  HeaveKind kind = HeaveKind::constant;
  double mean = 0.0;       // m
  double amplitude = 0.0;  // m
  double period = 1.0;     // s
  double phase = 0.0;      // rad
  std::vector<std::pair<double, double>> samples;  // (t s, offset m)
  double drift_speed = 0.0;  // m/s

  void validate() const;
  [[nodiscard]] double offset_at(double t) const;

  static HeaveTrajectory constant(double offset);
  static HeaveTrajectory sinusoid(double mean, double amplitude, double period,
                                  double phase = 0.0);
};

struct ForceBand {
  double low = 0.0;
  double high = 0.0;

  /// Closed interval; zero force (no contact) never counts as in band.
  [[nodiscard]] bool contains(double force) const {
    return force > 0.0 && force >= low && force <= high;
  }

  /// Symmetric band of +-fraction around a nominal force.
  static ForceBand around(double nominal, double fraction);
};

struct ContactSolution {
  double force = 0.0;
  std::optional<double> theta1;  // empty when out of reach
  bool saturated = false;
};

/// Pantograph probe driven by a spring through the lever.
struct PantographProbe {
  PantographConfig config;
  SpringModel spring;
  LossModel loss;
};

/// Baseline spring-loaded rod, rigidly mounted at a fixed extension.
struct SpringProbe {
  double stiffness = 100.0;       // N/m
  double preload = 0.0;           // N
  double mount_extension = 0.3;   // m

  void validate() const;
};

using ProbeModel = std::variant<PantographProbe, SpringProbe>;

/// Contact force for a gap (surface height minus base height). Total over all
/// gaps: beyond 2*l1 + tip offset there is no contact, below the minimum stroke
/// the probe bottoms out and the force is taken at the minimum-stroke pose.
ContactSolution solve_contact(const PantographConfig& config, const SpringModel& spring,
                              const LossModel& loss, double gap,
                              Direction direction = Direction::extending,
                              double noise_sample = 0.0);

/// Contact iff gap <= mount extension; force = max(0, preload + k * compression).
ContactSolution solve_contact(const SpringProbe& probe, double gap);

struct ContactScenario {
  SurfaceProfile surface = SurfaceProfile::flat(0.25);
  HeaveTrajectory heave;
  double start_x = 0.0;        // m
  double duration = 10.0;      // s
  double dt = 1e-3;            // s
  ForceBand band;
  double required_dwell = 1.0; // s

  void validate() const;
  [[nodiscard]] std::size_t step_count() const;
};

struct TimeSample {
  double t = 0.0;
  double gap = 0.0;
  std::optional<double> theta1;
  double force = 0.0;
  bool in_band = false;
  bool saturated = false;
};

/// Maximal run of steps with nonzero force, covering [start, end).
struct ContactEvent {
  double start = 0.0;
  double end = 0.0;
  double min_force = 0.0;
  double max_force = 0.0;
  double mean_force = 0.0;
  bool saturated = false;
};

struct DwellReport {
  std::vector<ContactEvent> events;
  double longest_in_band_dwell = 0.0;
  double in_band_fraction = 0.0;
  ForceBand band;
  double required_dwell = 0.0;
  bool measurement_achieved = false;
};

struct SimulationResult {
  std::vector<TimeSample> samples;
  DwellReport report;
};

/// Fixed-step quasi-static simulation. Step k samples t = k*dt and represents
/// [t, t + dt). Per-step contact solves run in parallel; noise is pre-drawn
/// from one generator so the output is independent of the thread count.
SimulationResult simulate(const ProbeModel& probe, const ContactScenario& scenario);

/// Single-threaded reference for simulate.
SimulationResult simulate_serial(const ProbeModel& probe, const ContactScenario& scenario);

/// Event partition and dwell statistics for a finished time series.
DwellReport summarize_dwell(const std::vector<TimeSample>& samples, double dt,
                            const ForceBand& band, double required_dwell);

struct ProbeComparison {
  SimulationResult pantograph;
  SimulationResult spring_probe;
};

ProbeComparison compare_probes(const PantographProbe& pantograph, const SpringProbe& spring_probe,
                               const ContactScenario& scenario);

}  // namespace pantograph
