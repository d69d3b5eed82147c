#pragma once

// Tiny scalar-generic kinematic helpers shared by the plain-double signal
// evaluation and the differentiable trace so both produce identical values.

#include <cmath>

namespace strelgen::detail {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Wrap an angle into (-pi, pi].
template <class S>
S wrap_angle(const S& a) {
  using std::fmod;
  S r = fmod(a + kPi, 2.0 * kPi);
  if (r <= 0.0) r = r + 2.0 * kPi;
  return r - kPi;
}

template <class S>
S speed_of(const S& vx, const S& vy) {
  using std::sqrt;
  return sqrt(vx * vx + vy * vy);
}

template <class S>
S heading_change_of(const S& h_now, const S& h_prev, double dt) {
  using std::abs;
  return abs(wrap_angle(h_now - h_prev)) / dt;
}

}  // namespace strelgen::detail
