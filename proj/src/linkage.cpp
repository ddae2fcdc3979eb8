#include "pantograph/linkage.hpp"

#include <cmath>
#include <sstream>

#include "pantograph/errors.hpp"
#include "pantograph/units.hpp"

namespace pantograph {

void PantographConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(l1) || !positive(l2)) {
    throw ConfigError("link lengths must be positive and finite");
  }
  if (!positive(r)) {
    throw ConfigError("lever arm r must be positive and finite");
  }
  if (!std::isfinite(tip_offset)) {
    throw ConfigError("tip offset must be finite");
  }
  if (!positive(min_height) || min_height >= max_height()) {
    std::ostringstream msg;
    msg << "minimum stroke height must lie in (0, " << max_height() << ") m, got "
        << min_height;
    throw ConfigError(msg.str());
  }
}

bool PantographConfig::is_ideal_vertical(double tol) const { return std::abs(l1 - l2) <= tol; }

bool JointState::is_constrained(double tol) const {
  return std::abs(2.0 * theta1 + theta2 - kPi) <= tol;
}

bool JointVelocity::is_constraint_consistent(double tol) const {
  return std::abs(2.0 * omega1 + omega2) <= tol;
}

void require_operating_branch(double theta1) {
  if (!(theta1 > 0.0 && theta1 <= kHalfPi)) {
    std::ostringstream msg;
    msg << "theta1 = " << theta1 << " rad is outside the operating branch (0, pi/2]";
    throw DomainError(msg.str());
  }
}

EndpointState forward_kinematics(const PantographConfig& config, const JointState& joints) {
  const double upper = joints.theta1 + joints.theta2;
  return {config.l1 * std::cos(joints.theta1) + config.l2 * std::cos(upper),
          config.l1 * std::sin(joints.theta1) + config.l2 * std::sin(upper)};
}

JointState constrain(double theta1) {
  require_operating_branch(theta1);
  return {theta1, kPi - 2.0 * theta1};
}

EndpointState constrained_fk(const PantographConfig& config, double theta1) {
  require_operating_branch(theta1);
  return {(config.l1 - config.l2) * std::cos(theta1), (config.l1 + config.l2) * std::sin(theta1)};
}

JointState inverse_kinematics(const PantographConfig& config, double y) {
  if (!config.is_ideal_vertical()) {
    std::ostringstream msg;
    msg << "closed-form inverse kinematics needs l1 == l2 (got l1 = " << config.l1
        << ", l2 = " << config.l2 << ")";
    throw UnsupportedGeometryError(msg.str());
  }
  const double stroke = 2.0 * config.l1;
  if (!(y > 0.0 && y <= stroke)) {
    std::ostringstream msg;
    msg << "height y = " << y << " m is unreachable; valid stroke is (0, " << stroke << "] m";
    throw ReachabilityError(msg.str());
  }
  return constrain(std::asin(y / stroke));
}

Jacobian jacobian(const PantographConfig& config, const JointState& joints) {
  const double upper = joints.theta1 + joints.theta2;
  const double s1 = std::sin(joints.theta1);
  const double c1 = std::cos(joints.theta1);
  const double s12 = std::sin(upper);
  const double c12 = std::cos(upper);
  return {{{-config.l1 * s1 - config.l2 * s12, -config.l2 * s12},
           {config.l1 * c1 + config.l2 * c12, config.l2 * c12}}};
}

ConstrainedVelocity constrained_velocity(const PantographConfig& config, double theta1,
                                         double omega1) {
  const JointState joints = constrain(theta1);
  const JointVelocity rates{omega1, -2.0 * omega1};
  const Jacobian j = jacobian(config, joints);
  return {rates,
          {j[0][0] * rates.omega1 + j[0][1] * rates.omega2,
           j[1][0] * rates.omega1 + j[1][1] * rates.omega2}};
}

double constrained_height_rate(const PantographConfig& config, double theta1) {
  return (config.l1 + config.l2) * std::cos(theta1);
}

}  // namespace pantograph
