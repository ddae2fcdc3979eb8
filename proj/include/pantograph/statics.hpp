#pragma once

// Quasi-static force transmission through the coupled linkage.
//
// A force f_i applied at the tip of the base lever (length r, perpendicular
// to the lower link) produces base torque tau1; the coupling halves it at
// the elbow (tau1 = 2*tau2), and the elbow torque balances the endpoint
// contact force f_o. The configuration terms cancel, leaving
// f_o = f_i * r / (2 * l2) at every pose.
//
// All torques and forces here are magnitudes. The direction of motion is
// carried separately by Direction and only matters for friction.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pantograph/linkage.hpp"

namespace pantograph {

enum class Direction { extending, compressing };

const char* to_string(Direction d);

struct ForceState {
  double f_i = 0.0;
  double f_o = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double alpha = 0.0;  // lever angle, theta1 - pi/2
};

enum class SpringKind { constant_force, linear };

const char* to_string(SpringKind k);

/// Actuation source pulling on the lever tip.
///
/// The spring's uncoiled length is the lever-tip arc r * (theta1 - theta1_min),
/// where theta1_min is the pose at the configured minimum stroke height.
/// Beyond travel_limit the delivered force drops by degradation_rate per metre.
struct SpringModel {
  SpringKind kind = SpringKind::constant_force;
  double tension = 14.906;        // N, constant-force kind
  double stiffness = 0.0;         // N/m, linear kind
  double preload = 0.0;           // N, linear kind
  double travel_limit = 0.030;    // m
  double degradation_rate = 40.0; // N/m past travel_limit

  void validate() const;

  static SpringModel constant_force(double tension);
  static SpringModel linear(double stiffness, double preload);
};

struct LossModel {
  double joint_coulomb = 0.004;          // N*m per joint
  double pulley_efficiency = 0.96;
  double measurement_noise_sigma = 0.02; // N
  std::uint64_t rng_seed = 42;

  void validate() const;

  [[nodiscard]] bool is_lossless() const {
    return joint_coulomb == 0.0 && pulley_efficiency == 1.0 && measurement_noise_sigma == 0.0;
  }

  static LossModel lossless(std::uint64_t seed = 42);
};

/// Seeded Gaussian noise for simulated scale readings. One instance per sweep
/// or simulation run; never shared.
class MeasurementNoise {
 public:
  explicit MeasurementNoise(const LossModel& loss);

  /// Zero without advancing the generator when sigma is zero.
  double sample();

  /// `count` consecutive samples, in draw order.
  std::vector<double> samples(std::size_t count);

 private:
  double sigma_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

double elbow_torque(const PantographConfig& config, double theta1, double f_o);

struct BaseTorque {
  double tau1 = 0.0;
  double alpha = 0.0;
};

BaseTorque base_torque(const PantographConfig& config, double theta1, double f_i);

/// f_i * r / (2 * l2). Throws DomainError for negative or non-finite f_i.
double ideal_output_force(const PantographConfig& config, double f_i);

/// Full torque/force bookkeeping at a pose for an input force.
ForceState force_state(const PantographConfig& config, double theta1, double f_i);

/// Lever-tip arc travelled since the minimum-stroke pose, clamped at zero.
double spring_uncoil(const PantographConfig& config, double theta1);

/// Force the spring delivers at the lever tip, including degradation.
double spring_input_force(const PantographConfig& config, const SpringModel& spring,
                          double theta1);

/// Same as spring_input_force with degradation ignored.
double nominal_spring_force(const PantographConfig& config, const SpringModel& spring,
                            double theta1);

/// Coulomb friction of both joints reflected to the endpoint, capped at `cap`.
double reflected_friction(const PantographConfig& config, const LossModel& loss, double theta1,
                          double cap);

/// Endpoint force with spring degradation, pulley and joint friction applied
/// but no measurement noise.
double transmitted_force(const PantographConfig& config, double theta1,
                         const SpringModel& spring, const LossModel& loss, Direction direction);

/// Adds a noise sample and clamps the result at zero.
double apply_measurement_noise(double force, double noise);

/// transmitted_force plus one noise draw from a generator seeded by loss.rng_seed.
double lossy_output_force(const PantographConfig& config, double theta1,
                          const SpringModel& spring, const LossModel& loss, Direction direction);

/// transmitted_force plus one draw from a caller-owned generator.
double lossy_output_force(const PantographConfig& config, double theta1,
                          const SpringModel& spring, const LossModel& loss, Direction direction,
                          MeasurementNoise& noise);

/// Linear spring-loaded probe: preload + stiffness * deflection.
double spring_probe_force(double stiffness, double preload, double deflection);

struct SweepRow {
  double height = 0.0;  // measured height, m (endpoint y + tip offset)
  double theta1 = 0.0;
  double force_ideal = 0.0;
  double force_lossy = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  PantographConfig config;
  SpringModel spring;
  LossModel loss;
  Direction direction = Direction::extending;
};

/// Force at the endpoint for each measured height. Noise is drawn row by row
/// from one generator seeded with loss.rng_seed. Rows are evaluated in
/// parallel; the result does not depend on the thread count.
SweepResult force_height_sweep(const PantographConfig& config, const SpringModel& spring,
                               const LossModel& loss, std::span<const double> heights,
                               Direction direction = Direction::extending);

/// Single-threaded reference for force_height_sweep.
SweepResult force_height_sweep_serial(const PantographConfig& config, const SpringModel& spring,
                                      const LossModel& loss, std::span<const double> heights,
                                      Direction direction = Direction::extending);

/// start, start + step, ... up to and including stop (within 1e-9 * step).
std::vector<double> height_grid(double start, double stop, double step);

}  // namespace pantograph
