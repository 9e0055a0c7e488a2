#pragma once

#include <cmath>

#include "qw1d/tolerances.hpp"

namespace qw1d {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Representative of x mod 2pi in [0, 2pi). Idempotent on its own range.
inline double wrap_angle(double x) {
  double y = x - two_pi * std::floor(x / two_pi);
  if (y >= two_pi) y -= two_pi;
  if (y < 0.0) y = 0.0;
  return y;
}

// Geodesic distance on the circle, in [0, pi]. std::remainder reduces the
// difference into (-pi, pi] without a seam at 0/2pi.
inline double phase_distance(double x, double y) {
  return std::abs(std::remainder(x - y, two_pi));
}

inline bool phase_equal(double x, double y, double eps) {
  return phase_distance(x, y) <= eps;
}

// An angle in radians, normalized to [0, 2pi). Equality is mod 2pi.
class Phase {
 public:
  Phase() = default;
  explicit Phase(double radians) : value_(wrap_angle(radians)) {}

  double value() const { return value_; }

  bool equal(Phase other, double eps) const {
    return phase_equal(value_, other.value_, eps);
  }
  bool equal(Phase other) const { return equal(other, tolerances().phase); }

  Phase operator+(Phase o) const { return Phase(value_ + o.value_); }
  Phase operator-(Phase o) const { return Phase(value_ - o.value_); }
  Phase operator-() const { return Phase(-value_); }

 private:
  double value_ = 0.0;
};

}  // namespace qw1d
