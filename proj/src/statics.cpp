#include "pantograph/statics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pantograph/errors.hpp"
#include "pantograph/units.hpp"

namespace pantograph {

namespace {

void require_force(double f, const char* name) {
  if (!(std::isfinite(f) && f >= 0.0)) {
    std::ostringstream msg;
    msg << name << " must be a finite non-negative force, got " << f;
    throw DomainError(msg.str());
  }
}

// Joint 1 turns at omega1 and the elbow at -2*omega1, so by virtual work the
// two Coulomb torques act on theta1 as one torque of (1 + 2) * joint_coulomb.
constexpr double kFrictionTorqueFactor = 3.0;

struct PreparedRow {
  double height;
  double theta1;
};

std::vector<PreparedRow> prepare_sweep(const PantographConfig& config, const SpringModel& spring,
                                       const LossModel& loss, std::span<const double> heights) {
  config.validate();
  spring.validate();
  loss.validate();
  if (heights.empty()) {
    throw DomainError("sweep needs at least one height");
  }
  std::vector<PreparedRow> rows;
  rows.reserve(heights.size());
  for (std::size_t k = 0; k < heights.size(); ++k) {
    const double h = heights[k];
    if (k > 0 && !(h > heights[k - 1])) {
      std::ostringstream msg;
      msg << "sweep heights must be strictly increasing (entry " << k << ": " << h
          << " m after " << heights[k - 1] << " m)";
      throw DomainError(msg.str());
    }
    try {
      rows.push_back({h, inverse_kinematics(config, h - config.tip_offset).theta1});
    } catch (const ReachabilityError& e) {
      std::ostringstream msg;
      msg << "sweep height entry " << k << " (" << h << " m): " << e.what();
      throw ReachabilityError(msg.str());
    }
  }
  return rows;
}

SweepRow evaluate_row(const PantographConfig& config, const SpringModel& spring,
                      const LossModel& loss, Direction direction, const PreparedRow& row,
                      double noise) {
  return {row.height, row.theta1,
          ideal_output_force(config, nominal_spring_force(config, spring, row.theta1)),
          apply_measurement_noise(transmitted_force(config, row.theta1, spring, loss, direction),
                                  noise)};
}

}  // namespace

const char* to_string(Direction d) {
  return d == Direction::extending ? "extending" : "compressing";
}

const char* to_string(SpringKind k) {
  return k == SpringKind::constant_force ? "constant_force" : "linear";
}

void SpringModel::validate() const {
  auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!nonneg(tension) || !nonneg(stiffness) || !nonneg(preload)) {
    throw ConfigError("spring tension, stiffness and preload must be non-negative");
  }
  if (!(std::isfinite(travel_limit) && travel_limit > 0.0)) {
    throw ConfigError("spring travel limit must be positive");
  }
  if (!nonneg(degradation_rate)) {
    throw ConfigError("spring degradation rate must be non-negative");
  }
}

SpringModel SpringModel::constant_force(double tension) {
  SpringModel s;
  s.kind = SpringKind::constant_force;
  s.tension = tension;
  return s;
}

SpringModel SpringModel::linear(double stiffness, double preload) {
  SpringModel s;
  s.kind = SpringKind::linear;
  s.tension = 0.0;
  s.stiffness = stiffness;
  s.preload = preload;
  return s;
}

void LossModel::validate() const {
  if (!(std::isfinite(joint_coulomb) && joint_coulomb >= 0.0)) {
    throw ConfigError("joint Coulomb torque must be non-negative");
  }
  if (!(pulley_efficiency > 0.0 && pulley_efficiency <= 1.0)) {
    throw ConfigError("pulley efficiency must lie in (0, 1]");
  }
  if (!(std::isfinite(measurement_noise_sigma) && measurement_noise_sigma >= 0.0)) {
    throw ConfigError("measurement noise sigma must be non-negative");
  }
}

LossModel LossModel::lossless(std::uint64_t seed) {
  return {0.0, 1.0, 0.0, seed};
}

MeasurementNoise::MeasurementNoise(const LossModel& loss)
    : sigma_(loss.measurement_noise_sigma),
      engine_(loss.rng_seed),
      normal_(0.0, sigma_ > 0.0 ? sigma_ : 1.0) {}

double MeasurementNoise::sample() { return sigma_ > 0.0 ? normal_(engine_) : 0.0; }

std::vector<double> MeasurementNoise::samples(std::size_t count) {
  std::vector<double> out(count, 0.0);
  if (sigma_ > 0.0) {
    for (auto& v : out) v = normal_(engine_);
  }
  return out;
}

// On the operating branch cos(pi - theta1) <= 0 and sin(theta1 - pi/2) <= 0;
// both magnitudes equal cos(theta1).
double elbow_torque(const PantographConfig& config, double theta1, double f_o) {
  require_operating_branch(theta1);
  require_force(f_o, "output force");
  return f_o * config.l2 * std::cos(theta1);
}

BaseTorque base_torque(const PantographConfig& config, double theta1, double f_i) {
  require_operating_branch(theta1);
  require_force(f_i, "input force");
  return {f_i * config.r * std::cos(theta1), theta1 - kHalfPi};
}

double ideal_output_force(const PantographConfig& config, double f_i) {
  require_force(f_i, "input force");
  return f_i * config.r / (2.0 * config.l2);
}

ForceState force_state(const PantographConfig& config, double theta1, double f_i) {
  const BaseTorque base = base_torque(config, theta1, f_i);
  const double f_o = ideal_output_force(config, f_i);
  return {f_i, f_o, base.tau1, elbow_torque(config, theta1, f_o), base.alpha};
}

double spring_uncoil(const PantographConfig& config, double theta1) {
  const double theta1_min = std::asin(config.min_height / config.max_height());
  return std::max(0.0, config.r * (theta1 - theta1_min));
}

double nominal_spring_force(const PantographConfig& config, const SpringModel& spring,
                            double theta1) {
  if (spring.kind == SpringKind::constant_force) {
    return spring.tension;
  }
  return spring.preload + spring.stiffness * spring_uncoil(config, theta1);
}

double spring_input_force(const PantographConfig& config, const SpringModel& spring,
                          double theta1) {
  const double nominal = nominal_spring_force(config, spring, theta1);
  const double excess = spring_uncoil(config, theta1) - spring.travel_limit;
  if (excess <= 0.0 || spring.degradation_rate == 0.0) {
    return nominal;
  }
  return std::max(0.0, nominal - spring.degradation_rate * excess);
}

double reflected_friction(const PantographConfig& config, const LossModel& loss, double theta1,
                          double cap) {
  if (loss.joint_coulomb == 0.0) {
    return 0.0;
  }
  const double torque = kFrictionTorqueFactor * loss.joint_coulomb;
  const double rate = std::abs(constrained_height_rate(config, theta1));
  // Diverges at full extension; friction cannot push the contact force negative.
  if (rate * cap <= torque) {
    return cap;
  }
  return torque / rate;
}

double transmitted_force(const PantographConfig& config, double theta1,
                         const SpringModel& spring, const LossModel& loss, Direction direction) {
  require_operating_branch(theta1);
  const double f_i = spring_input_force(config, spring, theta1) * loss.pulley_efficiency;
  const double drive = ideal_output_force(config, f_i);
  const double friction = reflected_friction(config, loss, theta1, drive);
  return direction == Direction::extending ? drive - friction : drive + friction;
}

double apply_measurement_noise(double force, double noise) {
  return std::max(0.0, force + noise);
}

double lossy_output_force(const PantographConfig& config, double theta1,
                          const SpringModel& spring, const LossModel& loss, Direction direction) {
  MeasurementNoise noise(loss);
  return lossy_output_force(config, theta1, spring, loss, direction, noise);
}

double lossy_output_force(const PantographConfig& config, double theta1,
                          const SpringModel& spring, const LossModel& loss, Direction direction,
                          MeasurementNoise& noise) {
  const double force = transmitted_force(config, theta1, spring, loss, direction);
  return apply_measurement_noise(force, noise.sample());
}

double spring_probe_force(double stiffness, double preload, double deflection) {
  if (!(deflection >= 0.0)) {
    std::ostringstream msg;
    msg << "spring probe deflection must be non-negative, got " << deflection;
    throw DomainError(msg.str());
  }
  return preload + stiffness * deflection;
}

SweepResult force_height_sweep(const PantographConfig& config, const SpringModel& spring,
                               const LossModel& loss, std::span<const double> heights,
                               Direction direction) {
  const std::vector<PreparedRow> prepared = prepare_sweep(config, spring, loss, heights);
  MeasurementNoise noise(loss);
  const std::vector<double> draws = noise.samples(prepared.size());

  SweepResult result{std::vector<SweepRow>(prepared.size()), config, spring, loss, direction};
  const auto n = static_cast<std::ptrdiff_t>(prepared.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    result.rows[k] = evaluate_row(config, spring, loss, direction, prepared[k], draws[k]);
  }
  return result;
}

SweepResult force_height_sweep_serial(const PantographConfig& config, const SpringModel& spring,
                                      const LossModel& loss, std::span<const double> heights,
                                      Direction direction) {
  const std::vector<PreparedRow> prepared = prepare_sweep(config, spring, loss, heights);
  MeasurementNoise noise(loss);
  SweepResult result{{}, config, spring, loss, direction};
  result.rows.reserve(prepared.size());
  for (const auto& row : prepared) {
    result.rows.push_back(evaluate_row(config, spring, loss, direction, row, noise.sample()));
  }
  return result;
}

std::vector<double> height_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) {
    throw DomainError("height grid needs step > 0 and stop >= start");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double h = start + static_cast<double>(k) * step;
    if (std::abs(h - stop) <= 1e-9 * step) h = stop;
    out.push_back(h);
  }
  return out;
}

}  // namespace pantograph
