#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace qcrw {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEpsAngle = 1e-9;
inline constexpr double kEpsZero = 1e-10;

// x reduced into [0, period)
inline double wrap(double x, double period = kTwoPi) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

// x reduced into [-period/2, period/2)
inline double wrap_centered(double x, double period = kTwoPi) {
  double r = wrap(x + period / 2, period);
  return r - period / 2;
}

inline bool angle_eq(double a, double b, double period = kTwoPi, double eps = kEpsAngle) {
  return std::abs(wrap_centered(a - b, period)) <= eps;
}

inline bool near_zero(cplx z, double eps = kEpsZero) { return std::abs(z) <= eps; }

// arg in [0, 2π)
inline double arg01(cplx z) { return wrap(std::arg(z)); }

// reduce into [0, period) but send values within eps of the period back to 0, so
// that nearly equal inputs on either side of the cut give nearly equal outputs.
inline double wrap_snap(double x, double period, double eps = kEpsAngle) {
  double r = wrap(x, period);
  if (period - r <= eps) r -= period;
  return r;
}

inline cplx expi(double x) { return std::polar(1.0, x); }

}  // namespace qcrw
