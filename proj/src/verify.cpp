#include "pantograph/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "pantograph/contact.hpp"
#include "pantograph/design.hpp"
#include "pantograph/errors.hpp"
#include "pantograph/linkage.hpp"
#include "pantograph/statics.hpp"
#include "pantograph/units.hpp"

namespace pantograph {

namespace {

double relative_error(double value, double reference) {
  const double scale = std::max(std::abs(reference), 1e-300);
  return std::abs(value - reference) / scale;
}

std::string format_worst(double worst, double limit) {
  std::ostringstream out;
  out << "worst " << worst << " (limit " << limit << ")";
  return out.str();
}

class Suite {
 public:
  explicit Suite(std::uint64_t seed) : rng_(seed) {}

  void check(const std::string& module, const std::string& name,
             const std::function<std::string(bool&)>& body) {
    bool passed = true;
    std::string detail;
    try {
      detail = body(passed);
    } catch (const std::exception& e) {
      passed = false;
      detail = std::string("threw: ") + e.what();
    }
    results_.push_back({module, name, passed, detail});
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::mt19937_64 rng_;
  std::vector<CheckResult> results_;
};

const PantographConfig kEqual{0.2, 0.2, 0.05};

SpringModel ideal_spring(double tension) {
  SpringModel sp = SpringModel::constant_force(tension);
  sp.degradation_rate = 0.0;
  return sp;
}
const PantographConfig kUnequal{0.25, 0.15, 0.05};

void linkage_checks(Suite& s) {
  const auto grid = open_closed_grid(kHalfPi, 1000);

  s.check("linkage", "constraint closure", [&](bool& ok) {
    double worst = 0.0;
    for (double t : grid) {
      const JointState j = constrain(t);
      worst = std::max(worst, std::abs(2.0 * j.theta1 + j.theta2 - kPi));
    }
    ok = worst <= 1e-12;
    return format_worst(worst, 1e-12);
  });

  s.check("linkage", "vertical line for equal links", [&](bool& ok) {
    double worst = 0.0;
    for (double t : grid) worst = std::max(worst, std::abs(constrained_fk(kEqual, t).x));
    const double limit = 1e-12 * (kEqual.l1 + kEqual.l2);
    ok = worst <= limit;
    return format_worst(worst, limit);
  });

  s.check("linkage", "constrained fk equals fk of constrained joints", [&](bool& ok) {
    double worst = 0.0;
    for (const auto& cfg : {kEqual, kUnequal}) {
      for (double t : grid) {
        const EndpointState a = constrained_fk(cfg, t);
        const EndpointState b = forward_kinematics(cfg, constrain(t));
        worst = std::max({worst, std::abs(a.x - b.x), std::abs(a.y - b.y)});
      }
    }
    ok = worst <= 1e-12;
    return format_worst(worst, 1e-12);
  });

  s.check("linkage", "inverse kinematics round trip", [&](bool& ok) {
    double worst = 0.0;
    for (double t : grid) {
      const double y = constrained_fk(kEqual, t).y;
      worst = std::max(worst, std::abs(inverse_kinematics(kEqual, y).theta1 - t));
    }
    ok = worst <= 1e-9;
    return format_worst(worst, 1e-9);
  });

  s.check("linkage", "jacobian matches central differences", [&](bool& ok) {
    constexpr double h = 1e-6;
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      const PantographConfig cfg{s.uniform(0.05, 0.5), s.uniform(0.05, 0.5), 0.05};
      const JointState q{s.uniform(-kPi, kPi), s.uniform(-kPi, kPi)};
      const Jacobian j = jacobian(cfg, q);
      double scale = 0.0;
      double err = 0.0;
      for (int col = 0; col < 2; ++col) {
        JointState plus = q;
        JointState minus = q;
        (col == 0 ? plus.theta1 : plus.theta2) += h;
        (col == 0 ? minus.theta1 : minus.theta2) -= h;
        const EndpointState fp = forward_kinematics(cfg, plus);
        const EndpointState fm = forward_kinematics(cfg, minus);
        const double dx = (fp.x - fm.x) / (2.0 * h);
        const double dy = (fp.y - fm.y) / (2.0 * h);
        err = std::max({err, std::abs(j[0][col] - dx), std::abs(j[1][col] - dy)});
        scale = std::max({scale, std::abs(j[0][col]), std::abs(j[1][col])});
      }
      worst = std::max(worst, err / scale);
    }
    ok = worst < 1e-6;
    return format_worst(worst, 1e-6);
  });

  s.check("linkage", "constrained velocity matches differenced fk", [&](bool& ok) {
    constexpr double h = 1e-6;
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      const PantographConfig& cfg = n % 2 == 0 ? kEqual : kUnequal;
      const double t = s.uniform(0.05, kHalfPi - 0.05);
      const double w = s.uniform(-2.0, 2.0);
      const ConstrainedVelocity v = constrained_velocity(cfg, t, w);
      const EndpointState fp = constrained_fk(cfg, t + w * h);
      const EndpointState fm = constrained_fk(cfg, t - w * h);
      const double xd = (fp.x - fm.x) / (2.0 * h);
      const double yd = (fp.y - fm.y) / (2.0 * h);
      const double scale = std::hypot(v.endpoint.x_dot, v.endpoint.y_dot);
      worst = std::max(worst, std::hypot(v.endpoint.x_dot - xd, v.endpoint.y_dot - yd) / scale);
      if (v.joints.omega2 != -2.0 * w) worst = INFINITY;
    }
    ok = worst < 1e-4;
    return format_worst(worst, 1e-4);
  });
}

void statics_checks(Suite& s) {
  const auto grid = open_closed_grid(kHalfPi, 1000);
  constexpr double f_i = 14.906;

  s.check("statics", "base torque is twice elbow torque", [&](bool& ok) {
    double worst = 0.0;
    const double f_o = ideal_output_force(kEqual, f_i);
    for (double t : grid) {
      worst = std::max(worst, relative_error(base_torque(kEqual, t, f_i).tau1,
                                             2.0 * elbow_torque(kEqual, t, f_o)));
    }
    ok = worst <= 1e-12;
    return format_worst(worst, 1e-12);
  });

  s.check("statics", "torque chain is configuration independent", [&](bool& ok) {
    double worst = 0.0;
    const double expected = kEqual.r * f_i / (2.0 * kEqual.l2);
    for (double t : open_closed_grid(kHalfPi - 1e-6, 1000)) {
      const double tau2 = base_torque(kEqual, t, f_i).tau1 / 2.0;
      worst = std::max(worst, relative_error(tau2 / (kEqual.l2 * std::cos(t)), expected));
    }
    ok = worst <= 1e-9;
    return format_worst(worst, 1e-9);
  });

  s.check("statics", "friction never raises extending force", [&](bool& ok) {
    const SpringModel spring;
    ok = true;
    for (double t : open_closed_grid(1.5, 60)) {
      double previous = INFINITY;
      for (double c : {0.0, 0.001, 0.004, 0.01, 0.05, 0.2}) {
        LossModel loss{c, 0.96, 0.0, 1};
        const double f = transmitted_force(kEqual, t, spring, loss, Direction::extending);
        ok = ok && f <= previous;
        previous = f;
      }
      ok = ok && lossy_output_force(kEqual, t, ideal_spring(f_i),
                                    LossModel::lossless(), Direction::extending) ==
                     ideal_output_force(kEqual, f_i);
    }
    return std::string(ok ? "monotone; lossless equals ideal" : "violated");
  });

  const auto heights = height_grid(0.100, 0.400, 0.025);

  s.check("statics", "sweep is deterministic and thread independent", [&](bool& ok) {
    const SweepResult a = force_height_sweep(kEqual, SpringModel{}, LossModel{}, heights);
    const SweepResult b = force_height_sweep(kEqual, SpringModel{}, LossModel{}, heights);
    const SweepResult c = force_height_sweep_serial(kEqual, SpringModel{}, LossModel{}, heights);
    ok = a.rows.size() == b.rows.size() && a.rows.size() == c.rows.size();
    for (std::size_t k = 0; ok && k < a.rows.size(); ++k) {
      ok = a.rows[k].force_lossy == b.rows[k].force_lossy &&
           a.rows[k].force_lossy == c.rows[k].force_lossy &&
           a.rows[k].theta1 == c.rows[k].theta1;
    }
    return std::string(ok ? "bit-identical" : "mismatch");
  });

  s.check("statics", "compressing force is at least extending force", [&](bool& ok) {
    const SweepResult ext =
        force_height_sweep(kEqual, SpringModel{}, LossModel{}, heights, Direction::extending);
    const SweepResult cmp =
        force_height_sweep(kEqual, SpringModel{}, LossModel{}, heights, Direction::compressing);
    ok = true;
    for (std::size_t k = 0; k < ext.rows.size(); ++k) {
      ok = ok && cmp.rows[k].force_lossy >= ext.rows[k].force_lossy;
    }
    return std::string(ok ? "hysteresis band holds" : "violated");
  });
}

void contact_checks(Suite& s) {
  const SpringModel spring = ideal_spring(14.906);
  const LossModel lossless = LossModel::lossless();

  s.check("contact", "lossless force identical across the stroke", [&](bool& ok) {
    const double reference = solve_contact(kEqual, spring, lossless, 0.25).force;
    double worst = 0.0;
    for (int mm = 100; mm <= 400; ++mm) {
      const double gap = mm / 1000.0;
      worst = std::max(worst, std::abs(solve_contact(kEqual, spring, lossless, gap).force -
                                       reference));
    }
    ok = worst <= 1e-12;
    return format_worst(worst, 1e-12);
  });

  s.check("contact", "reach boundary", [&](bool& ok) {
    ok = true;
    for (int k = 0; k <= 1200; ++k) {
      const double gap = k * 0.0005;
      const double f = solve_contact(kEqual, spring, lossless, gap).force;
      ok = ok && (gap > 0.4 ? f == 0.0 : f > 0.0);
    }
    return std::string(ok ? "zero beyond reach, positive within" : "violated");
  });

  s.check("contact", "spring probe force is linear in gap", [&](bool& ok) {
    const SpringProbe probe{100.0, 0.5, 0.3};
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      const double g1 = s.uniform(0.0, 0.3);
      const double g2 = s.uniform(0.0, 0.3);
      const double diff = solve_contact(probe, g2).force - solve_contact(probe, g1).force;
      worst = std::max(worst, std::abs(diff + probe.stiffness * (g2 - g1)));
    }
    ok = worst <= 1e-12;
    return format_worst(worst, 1e-12);
  });

  ContactScenario scenario;
  scenario.surface = SurfaceProfile::flat(0.3);
  scenario.heave = HeaveTrajectory::sinusoid(0.0, 0.2, 2.0);
  scenario.duration = 6.0;
  scenario.band = ForceBand::around(ideal_output_force(kEqual, 14.906), 0.1);
  const PantographProbe probe{kEqual, SpringModel{}, LossModel{}};

  s.check("contact", "contact events partition nonzero-force steps", [&](bool& ok) {
    const SimulationResult r = simulate(probe, scenario);
    std::vector<bool> covered(r.samples.size(), false);
    ok = true;
    double last_end = -1.0;
    for (const auto& e : r.report.events) {
      ok = ok && e.start >= last_end && e.end > e.start && e.min_force <= e.mean_force &&
           e.mean_force <= e.max_force;
      last_end = e.end;
      const auto first = static_cast<std::size_t>(std::llround(e.start / scenario.dt));
      const auto stop = static_cast<std::size_t>(std::llround(e.end / scenario.dt));
      for (std::size_t k = first; k < stop && k < covered.size(); ++k) covered[k] = true;
    }
    for (std::size_t k = 0; k < r.samples.size(); ++k) {
      ok = ok && covered[k] == (r.samples[k].force > 0.0);
    }
    return std::to_string(r.report.events.size()) + " events";
  });

  s.check("contact", "simulation is deterministic and thread independent", [&](bool& ok) {
    const SimulationResult a = simulate(probe, scenario);
    const SimulationResult b = simulate_serial(probe, scenario);
    ok = a.samples.size() == b.samples.size();
    for (std::size_t k = 0; ok && k < a.samples.size(); ++k) {
      ok = a.samples[k].force == b.samples[k].force && a.samples[k].gap == b.samples[k].gap;
    }
    return std::string(ok ? "bit-identical" : "mismatch");
  });
}

void design_checks(Suite& s) {
  DesignSpec spec;
  spec.tensions = {12.0, 14.906, 16.0};
  spec.link_bounds = {0.15, 0.25};
  spec.lever_bounds = {0.02, 0.10};

  s.check("design", "parallel solver matches serial reference", [&](bool& ok) {
    ok = solve_design(spec) == solve_design_reference(spec);
    return std::to_string(candidate_count(spec)) + " candidates";
  });

  s.check("design", "feasible solution reproduces target", [&](bool& ok) {
    const DesignSolution sol = solve_design(spec);
    const double f = ideal_output_force({sol.link, sol.link, sol.lever}, sol.tension);
    ok = sol.feasible && relative_error(f, spec.target_force) <= spec.force_tolerance &&
         relative_error(f, sol.achieved_force) <= 1e-12;
    return "achieved " + std::to_string(f) + " N";
  });

  s.check("design", "relaxing envelope or bounds keeps feasibility", [&](bool& ok) {
    ok = true;
    for (double envelope : {0.24, 0.26, 0.30, 0.40}) {
      DesignSpec tight = spec;
      tight.envelope_diameter = envelope;
      DesignSpec wide = tight;
      wide.envelope_diameter = envelope + 0.05;
      wide.link_bounds.lo -= 10 * spec.grid_step;
      wide.lever_bounds.hi += 10 * spec.grid_step;
      ok = ok && (!solve_design(tight).feasible || solve_design(wide).feasible);
    }
    return std::string(ok ? "monotone" : "violated");
  });
}

}  // namespace

std::vector<double> open_closed_grid(double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = hi * static_cast<double>(k + 1) / static_cast<double>(n);
  }
  return out;
}

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
  Suite suite(seed);
  linkage_checks(suite);
  statics_checks(suite);
  contact_checks(suite);
  design_checks(suite);
  return suite.take();
}

}  // namespace pantograph
