#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pantograph/contact.hpp"
#include "pantograph/errors.hpp"
#include "pantograph/units.hpp"

namespace pantograph {
namespace {

const PantographConfig kEqual{0.2, 0.2, 0.05};
constexpr double kNominal = 1.86325;

SpringModel ideal_spring() {
  SpringModel s = SpringModel::constant_force(14.906);
  s.degradation_rate = 0.0;
  return s;
}

PantographProbe lossless_probe() { return {kEqual, ideal_spring(), LossModel::lossless()}; }

ContactScenario flat_scenario(double gap, double duration) {
  ContactScenario s;
  s.surface = SurfaceProfile::flat(gap);
  s.heave = HeaveTrajectory::constant(0.0);
  s.duration = duration;
  s.dt = 1e-3;
  s.band = {1.7, 2.0};
  s.required_dwell = 1.0;
  return s;
}

TEST(SolveContact, InStrokeForceIsNominal) {
  const ContactSolution c = solve_contact(kEqual, ideal_spring(), LossModel::lossless(), 0.25);
  EXPECT_NEAR(c.force, 1.8633, 5e-5);
  EXPECT_EQ(c.force, kNominal);
  ASSERT_TRUE(c.theta1.has_value());
  EXPECT_NEAR(*c.theta1, std::asin(0.25 / 0.4), 1e-15);
  EXPECT_FALSE(c.saturated);
}

TEST(SolveContact, OutOfReach) {
  const ContactSolution c = solve_contact(kEqual, ideal_spring(), LossModel::lossless(), 0.5);
  EXPECT_EQ(c.force, 0.0);
  EXPECT_FALSE(c.theta1.has_value());
  EXPECT_FALSE(c.saturated);
}

TEST(SolveContact, BottomsOutBelowMinimumStroke) {
  for (double gap : {0.05, 0.0, -0.2}) {
    const ContactSolution c = solve_contact(kEqual, ideal_spring(), LossModel::lossless(), gap);
    EXPECT_TRUE(c.saturated);
    ASSERT_TRUE(c.theta1.has_value());
    EXPECT_NEAR(*c.theta1, std::asin(0.1 / 0.4), 1e-15);
    EXPECT_EQ(c.force, kNominal);
  }
}

TEST(SolveContact, TipOffsetExtendsReach) {
  PantographConfig cfg = kEqual;
  cfg.tip_offset = 0.05;
  EXPECT_GT(solve_contact(cfg, ideal_spring(), LossModel::lossless(), 0.45).force, 0.0);
  EXPECT_EQ(solve_contact(cfg, ideal_spring(), LossModel::lossless(), 0.4501).force, 0.0);
}

TEST(SolveContact, SpringProbeBaseline) {
  const SpringProbe probe{100.0, 0.0, 0.3};
  EXPECT_NEAR(solve_contact(probe, 0.25).force, 5.0, 1e-12);
  EXPECT_EQ(solve_contact(probe, 0.31).force, 0.0);
  EXPECT_EQ(solve_contact(probe, 0.3).force, 0.0);
  EXPECT_EQ(solve_contact(SpringProbe{100.0, 0.7, 0.3}, 0.3).force, 0.7);
}

TEST(SolveContact, ForceInvariantAcrossStroke) {
  for (int mm = 100; mm <= 400; ++mm) {
    EXPECT_EQ(solve_contact(kEqual, ideal_spring(), LossModel::lossless(), mm / 1000.0).force,
              kNominal);
  }
}

TEST(SolveContact, ReachBoundaryProperty) {
  oracle::Sampler rng(8);
  for (int n = 0; n < 2000; ++n) {
    const double gap = rng.uniform(0.0, 0.8);
    const double f = solve_contact(kEqual, ideal_spring(), LossModel::lossless(), gap).force;
    if (gap > 0.4) {
      EXPECT_EQ(f, 0.0);
    } else {
      EXPECT_GT(f, 0.0);
    }
  }
}

TEST(SolveContact, SpringProbeLinearityProperty) {
  const SpringProbe probe{250.0, 0.3, 0.35};
  oracle::Sampler rng(9);
  for (int n = 0; n < 500; ++n) {
    const double g1 = rng.uniform(0.0, 0.35);
    const double g2 = rng.uniform(0.0, 0.35);
    const double df = solve_contact(probe, g2).force - solve_contact(probe, g1).force;
    EXPECT_NEAR(df, -probe.stiffness * (g2 - g1), 1e-12);
  }
}

TEST(Profiles, SurfaceAndHeaveInterpolation) {
  const SurfaceProfile s{{{0.0, 0.2}, {1.0, 0.3}, {2.0, 0.1}}};
  EXPECT_DOUBLE_EQ(s.height_at(-5.0), 0.2);
  EXPECT_DOUBLE_EQ(s.height_at(0.5), 0.25);
  EXPECT_DOUBLE_EQ(s.height_at(1.5), 0.2);
  EXPECT_DOUBLE_EQ(s.height_at(9.0), 0.1);

  HeaveTrajectory h;
  h.kind = HeaveKind::samples;
  h.samples = {{0.0, 0.0}, {2.0, 0.1}};
  EXPECT_DOUBLE_EQ(h.offset_at(1.0), 0.05);
  EXPECT_DOUBLE_EQ(h.offset_at(3.0), 0.1);

  const HeaveTrajectory sine = HeaveTrajectory::sinusoid(0.01, 0.2, 4.0);
  EXPECT_NEAR(sine.offset_at(1.0), 0.21, 1e-15);
  EXPECT_NEAR(sine.offset_at(3.0), -0.19, 1e-15);
}

TEST(Profiles, Validation) {
  EXPECT_THROW((SurfaceProfile{{{1.0, 0.2}, {1.0, 0.3}}}).validate(), ConfigError);
  EXPECT_THROW(SurfaceProfile{}.validate(), ConfigError);
  EXPECT_THROW(HeaveTrajectory::sinusoid(0.0, 0.1, 0.0).validate(), ConfigError);
  ContactScenario s = flat_scenario(0.25, 1.0);
  s.dt = 0.0;
  EXPECT_THROW(simulate(lossless_probe(), s), ConfigError);
  s = flat_scenario(0.25, 1e-4);
  EXPECT_THROW(simulate(lossless_probe(), s), ConfigError);
  s = flat_scenario(0.25, 1.0);
  s.band = {2.0, 1.0};
  EXPECT_THROW(simulate(lossless_probe(), s), ConfigError);
}

TEST(Simulate, FlatSurfaceSingleDwell) {
  const SimulationResult r = simulate(lossless_probe(), flat_scenario(0.25, 2.0));
  ASSERT_EQ(r.samples.size(), 2000u);
  ASSERT_EQ(r.report.events.size(), 1u);
  EXPECT_EQ(r.report.events[0].start, 0.0);
  EXPECT_NEAR(r.report.events[0].end, 2.0, 1e-12);
  EXPECT_EQ(r.report.events[0].min_force, kNominal);
  EXPECT_EQ(r.report.events[0].max_force, kNominal);
  EXPECT_EQ(r.report.in_band_fraction, 1.0);
  EXPECT_NEAR(r.report.longest_in_band_dwell, 2.0, 1e-12);
  EXPECT_TRUE(r.report.measurement_achieved);
}

TEST(Simulate, HeaveCrossingReachAlternates) {
  ContactScenario s = flat_scenario(0.3, 6.0);
  s.heave = HeaveTrajectory::sinusoid(0.0, 0.2, 2.0);
  const SimulationResult r = simulate(lossless_probe(), s);
  EXPECT_GE(r.report.events.size(), 3u);
  EXPECT_LT(r.report.in_band_fraction, 1.0);
  EXPECT_GT(r.report.in_band_fraction, 0.0);
  for (std::size_t k = 1; k < r.report.events.size(); ++k) {
    EXPECT_GT(r.report.events[k].start, r.report.events[k - 1].end);
  }
}

TEST(Simulate, PointBandAtExactForce) {
  ContactScenario s = flat_scenario(0.3, 1.0);
  s.band = {kNominal, kNominal};
  const SimulationResult r = simulate(lossless_probe(), s);
  EXPECT_EQ(r.report.in_band_fraction, 1.0);
}

TEST(Simulate, OutOfReachHasNoEvents) {
  const SimulationResult r = simulate(lossless_probe(), flat_scenario(0.6, 2.0));
  EXPECT_TRUE(r.report.events.empty());
  EXPECT_EQ(r.report.in_band_fraction, 0.0);
  EXPECT_FALSE(r.report.measurement_achieved);
  for (const auto& sample : r.samples) EXPECT_FALSE(sample.theta1.has_value());
}

TEST(Simulate, DriftAcrossStepIntoContact) {
  ContactScenario s = flat_scenario(0.0, 2.0);
  s.surface = SurfaceProfile{{{0.0, 0.6}, {0.5, 0.6}, {0.5001, 0.3}}};
  s.heave.drift_speed = 0.5;  // reaches the step at t = 1 s
  const SimulationResult r = simulate(lossless_probe(), s);
  ASSERT_EQ(r.report.events.size(), 1u);
  EXPECT_NEAR(r.report.events[0].start, 1.0, 2e-3);
  EXPECT_FALSE(r.report.measurement_achieved);
}

TEST(Simulate, SaturationFlagged) {
  ContactScenario s = flat_scenario(0.05, 1.0);
  const SimulationResult r = simulate(lossless_probe(), s);
  ASSERT_EQ(r.report.events.size(), 1u);
  EXPECT_TRUE(r.report.events[0].saturated);
}

TEST(Simulate, EventPartitionProperty) {
  ContactScenario s = flat_scenario(0.3, 8.0);
  s.heave = HeaveTrajectory::sinusoid(0.02, 0.17, 1.3, 0.4);
  const PantographProbe probe{kEqual, SpringModel{}, LossModel{}};
  const SimulationResult r = simulate(probe, s);
  std::size_t covered = 0;
  double last_end = -1.0;
  for (const auto& e : r.report.events) {
    EXPECT_GE(e.start, last_end);
    EXPECT_GT(e.end, e.start);
    EXPECT_LE(e.min_force, e.mean_force);
    EXPECT_LE(e.mean_force, e.max_force);
    const auto first = static_cast<std::size_t>(std::llround(e.start / s.dt));
    const auto stop = static_cast<std::size_t>(std::llround(e.end / s.dt));
    for (std::size_t k = first; k < stop; ++k) {
      EXPECT_GT(r.samples[k].force, 0.0);
      ++covered;
    }
    if (stop < r.samples.size()) EXPECT_EQ(r.samples[stop].force, 0.0);
    if (first > 0) EXPECT_EQ(r.samples[first - 1].force, 0.0);
    last_end = e.end;
  }
  std::size_t nonzero = 0;
  for (const auto& sample : r.samples) nonzero += sample.force > 0.0;
  EXPECT_EQ(covered, nonzero);
}

TEST(Simulate, DeterministicAndThreadIndependent) {
  ContactScenario s = flat_scenario(0.3, 5.0);
  s.heave = HeaveTrajectory::sinusoid(0.0, 0.12, 1.7);
  const PantographProbe probe{kEqual, SpringModel{}, LossModel{}};
  const SimulationResult a = simulate(probe, s);
  const SimulationResult b = simulate(probe, s);
  const SimulationResult c = simulate_serial(probe, s);
  ASSERT_EQ(a.samples.size(), c.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    EXPECT_EQ(a.samples[k].force, b.samples[k].force);
    EXPECT_EQ(a.samples[k].force, c.samples[k].force);
    EXPECT_EQ(a.samples[k].gap, c.samples[k].gap);
  }
  EXPECT_EQ(a.report.events.size(), c.report.events.size());
  EXPECT_EQ(a.report.in_band_fraction, c.report.in_band_fraction);
}

TEST(Simulate, FrictionDependsOnHeaveDirection) {
  ContactScenario s = flat_scenario(0.25, 2.0);
  s.heave = HeaveTrajectory::sinusoid(0.0, 0.05, 1.0);
  const PantographProbe probe{kEqual, ideal_spring(), LossModel{0.01, 1.0, 0.0, 1}};
  const SimulationResult r = simulate(probe, s);
  // Base rising -> gap shrinking -> probe compressing -> friction adds to force.
  bool saw_above = false;
  bool saw_below = false;
  for (const auto& sample : r.samples) {
    saw_above = saw_above || sample.force > kNominal;
    saw_below = saw_below || sample.force < kNominal;
  }
  EXPECT_TRUE(saw_above);
  EXPECT_TRUE(saw_below);
}

TEST(CompareProbes, HeaveSeparatesTheTwoLaws) {
  ContactScenario s = flat_scenario(0.25, 10.0);
  s.heave = HeaveTrajectory::sinusoid(0.0, 0.05, 2.0);
  s.band = ForceBand::around(kNominal, 0.1);
  const ProbeComparison cmp = compare_probes(lossless_probe(), SpringProbe{100.0, 0.0, 0.3}, s);
  EXPECT_EQ(cmp.pantograph.report.in_band_fraction, 1.0);
  EXPECT_LT(cmp.spring_probe.report.in_band_fraction, 1.0);
  double lo = INFINITY;
  double hi = 0.0;
  for (const auto& sample : cmp.spring_probe.samples) {
    lo = std::min(lo, sample.force);
    hi = std::max(hi, sample.force);
  }
  EXPECT_NEAR(hi - lo, 10.0, 1e-3);
}

TEST(CompareProbes, ZeroHeaveBothHold) {
  ContactScenario s = flat_scenario(0.25, 3.0);
  s.band = ForceBand::around(kNominal, 0.1);
  const ProbeComparison cmp =
      compare_probes(lossless_probe(), SpringProbe{100.0, kNominal, 0.25}, s);
  EXPECT_TRUE(cmp.pantograph.report.measurement_achieved);
  EXPECT_TRUE(cmp.spring_probe.report.measurement_achieved);
}

TEST(CompareProbes, ZeroStiffnessSpringMimicsConstantForce) {
  ContactScenario s = flat_scenario(0.3, 6.0);
  s.heave = HeaveTrajectory::sinusoid(0.0, 0.05, 2.0);
  s.band = ForceBand::around(kNominal, 0.1);
  const ProbeComparison cmp = compare_probes(lossless_probe(), SpringProbe{0.0, kNominal, 10.0}, s);
  const DwellReport& a = cmp.pantograph.report;
  const DwellReport& b = cmp.spring_probe.report;
  ASSERT_EQ(a.events.size(), b.events.size());
  for (std::size_t k = 0; k < a.events.size(); ++k) {
    EXPECT_EQ(a.events[k].start, b.events[k].start);
    EXPECT_EQ(a.events[k].end, b.events[k].end);
    EXPECT_EQ(a.events[k].mean_force, b.events[k].mean_force);
  }
  EXPECT_EQ(a.in_band_fraction, b.in_band_fraction);
  EXPECT_EQ(a.measurement_achieved, b.measurement_achieved);
}

TEST(Simulate, RejectsUnequalLinks) {
  const PantographProbe probe{{0.25, 0.15, 0.05}, ideal_spring(), LossModel::lossless()};
  EXPECT_THROW(simulate(probe, flat_scenario(0.25, 1.0)), UnsupportedGeometryError);
}

}  // namespace
}  // namespace pantograph
