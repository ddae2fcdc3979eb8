#pragma once

#include <numbers>

namespace pantograph {

// Internal units are SI. Gram-force and millimetres only appear at I/O.
inline constexpr double kStandardGravity = 9.80665;  // m/s^2
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

constexpr double newtons_from_gram_force(double gf) { return gf * kStandardGravity / 1000.0; }
constexpr double gram_force_from_newtons(double n) { return n / kStandardGravity * 1000.0; }

constexpr double metres_from_mm(double mm) { return mm / 1000.0; }
constexpr double radians_from_degrees(double deg) { return deg * kPi / 180.0; }
constexpr double degrees_from_radians(double rad) { return rad * 180.0 / kPi; }

}  // namespace pantograph
