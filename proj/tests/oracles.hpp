#pragma once

// Test-only reference computations. These deliberately avoid the library's
// code paths: kinematics via complex-number composition, derivatives via
// finite differences, design search via plain enumeration and sorting.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
  double x;
  double y;
};

/// Endpoint of a two-link chain by composing rotations as unit complex numbers.
inline Point chain_endpoint(double l1, double l2, double theta1, double theta2) {
  const std::complex<double> lower = std::polar(l1, theta1);
  const std::complex<double> upper = std::polar(l2, theta1) * std::polar(1.0, theta2);
  const std::complex<double> tip = lower + upper;
  return {tip.real(), tip.imag()};
}

/// Central-difference Jacobian of chain_endpoint.
inline std::array<std::array<double, 2>, 2> fd_jacobian(double l1, double l2, double t1,
                                                        double t2, double h = 1e-6) {
  const Point a = chain_endpoint(l1, l2, t1 + h, t2);
  const Point b = chain_endpoint(l1, l2, t1 - h, t2);
  const Point c = chain_endpoint(l1, l2, t1, t2 + h);
  const Point d = chain_endpoint(l1, l2, t1, t2 - h);
  return {{{(a.x - b.x) / (2 * h), (c.x - d.x) / (2 * h)},
           {(a.y - b.y) / (2 * h), (c.y - d.y) / (2 * h)}}};
}

/// Output force from the lever torque balance evaluated step by step:
/// tau1 = f_i * r * |sin(theta1 - 90deg)|, tau2 = tau1 / 2,
/// f_o = tau2 / (l2 * |cos(pi - theta1)|).
inline double torque_chain_force(double f_i, double r, double l2, double theta1) {
  const double alpha = theta1 - kPi / 2.0;
  const double tau1 = f_i * r * std::abs(std::sin(alpha));
  const double tau2 = tau1 / 2.0;
  return tau2 / (l2 * std::abs(std::cos(kPi - theta1)));
}

struct DesignGrid {
  double target;
  double stroke_min;
  double stroke_max;
  double envelope;
  std::vector<double> tensions;
  double link_lo, link_hi, lever_lo, lever_hi;
  double step;
  double tolerance;
  double margin;
  double min_fraction;
};

struct DesignPick {
  bool feasible = false;
  double link = 0, lever = 0, tension = 0;
  int violations = 0;
  std::size_t evaluated = 0;
};

/// Enumerates every grid point, keeps each with its violation count, sorts the
/// whole list by (violations, footprint, lever, link, tension) and takes the head.
inline DesignPick brute_force_design(const DesignGrid& g) {
  struct Row {
    int violations;
    double footprint, lever, link, tension;
  };
  auto axis = [&](double lo, double hi) {
    std::vector<double> v;
    const auto n = static_cast<long>(std::floor((hi - lo) / g.step + 1e-9));
    for (long k = 0; k <= n; ++k) v.push_back(lo + static_cast<double>(k) * g.step);
    return v;
  };
  std::vector<Row> rows;
  for (double l : axis(g.link_lo, g.link_hi)) {
    for (double r : axis(g.lever_lo, g.lever_hi)) {
      for (double t : g.tensions) {
        int v = 0;
        if (g.stroke_max > 2.0 * l) ++v;
        if (g.stroke_min < g.min_fraction * 2.0 * l) ++v;
        const double footprint = l + r + g.margin;
        if (footprint > g.envelope) ++v;
        const double force = t * r / (2.0 * l);
        if (std::abs(force - g.target) > g.tolerance * g.target) ++v;
        rows.push_back({v, footprint, r, l, t});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.violations, a.footprint, a.lever, a.link, a.tension) <
           std::tie(b.violations, b.footprint, b.lever, b.link, b.tension);
  });
  const Row& best = rows.front();
  return {best.violations == 0, best.link, best.lever, best.tension, best.violations,
          rows.size()};
}

/// Deterministic uniform sampler for hand-rolled property tests.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace oracle
