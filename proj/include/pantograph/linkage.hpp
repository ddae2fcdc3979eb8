#pragma once

// Two-bar pantograph kinematics.
//
// Angle convention: theta1 is the lower link measured counterclockwise from
// the horizontal base line, theta2 the relative elbow angle, so the upper
// link sits at theta1 + theta2. The 2:1 coupling enforces
// 2*theta1 + theta2 = pi, which for equal links pins the endpoint to x = 0.

#include <array>

namespace pantograph {

/// Tolerance for treating a joint state or velocity as satisfying the coupling.
inline constexpr double kConstraintTolerance = 1e-9;

/// Absolute tolerance for treating l1 and l2 as equal.
inline constexpr double kEqualLinkTolerance = 1e-12;

struct PantographConfig {
  double l1 = 0.2;  // lower link, m
  double l2 = 0.2;  // upper link, m
  double r = 0.05;  // lever arm at the base joint, m

  // Constant offset between the endpoint y and the measured/contact height
  // (probe tip length). Zero means the endpoint is the contact point.
  double tip_offset = 0.0;

  // Lowest endpoint height of the working stroke (fully folded pose).
  double min_height = 0.1;

  /// Throws ConfigError when a field violates its invariant.
  void validate() const;

  /// True when l1 == l2, i.e. the constrained endpoint moves on a vertical line.
  [[nodiscard]] bool is_ideal_vertical(double tol = kEqualLinkTolerance) const;

  /// Highest constrained endpoint y, (l1 + l2) at theta1 = pi/2.
  [[nodiscard]] double max_height() const { return l1 + l2; }
};

struct JointState {
  double theta1 = 0.0;
  double theta2 = 0.0;

  [[nodiscard]] bool is_constrained(double tol = kConstraintTolerance) const;
};

struct JointVelocity {
  double omega1 = 0.0;
  double omega2 = 0.0;

  [[nodiscard]] bool is_constraint_consistent(double tol = kConstraintTolerance) const;
};

struct EndpointState {
  double x = 0.0;
  double y = 0.0;
};

struct EndpointVelocity {
  double x_dot = 0.0;
  double y_dot = 0.0;
};

/// d(x, y) / d(theta1, theta2); row 0 is x, row 1 is y.
using Jacobian = std::array<std::array<double, 2>, 2>;

struct ConstrainedVelocity {
  JointVelocity joints;
  EndpointVelocity endpoint;
};

/// Throws DomainError unless theta1 lies on the supported branch (0, pi/2].
void require_operating_branch(double theta1);

EndpointState forward_kinematics(const PantographConfig& config, const JointState& joints);

/// Joint state on the coupling manifold: theta2 = pi - 2*theta1.
JointState constrain(double theta1);

/// Endpoint of the coupled linkage: ((l1 - l2) cos theta1, (l1 + l2) sin theta1).
EndpointState constrained_fk(const PantographConfig& config, double theta1);

/// Elbow-up inverse of constrained_fk for equal links.
/// Throws UnsupportedGeometryError if l1 != l2 and ReachabilityError if y
/// is outside (0, 2*l1].
JointState inverse_kinematics(const PantographConfig& config, double y);

Jacobian jacobian(const PantographConfig& config, const JointState& joints);

/// Joint and endpoint rates when joint 1 turns at omega1 and the coupling
/// drives joint 2 at -2*omega1.
ConstrainedVelocity constrained_velocity(const PantographConfig& config, double theta1,
                                         double omega1);

/// Total derivative dy/dtheta1 along the coupling manifold, (l1 + l2) cos theta1.
double constrained_height_rate(const PantographConfig& config, double theta1);

}  // namespace pantograph
