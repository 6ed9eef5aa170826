#pragma once

#include <cmath>

namespace lpp {

/// Correctly rounded cube root for finite x. std::cbrt may be 1 ulp off at
/// run time while compile-time folding is exact, which would make the
/// scaling units depend on inlining; this settles the last bit with an
/// extended-precision midpoint test so both paths agree.
inline double cbrt_rn(double x) {
  if (x == 0.0 || !std::isfinite(x)) return std::cbrt(x);
  if (x < 0.0) return -cbrt_rn(-x);
  double y = std::cbrt(x);
  const long double lx = x;
  auto mid_cubed = [](double a, double b) {
    const long double m = (static_cast<long double>(a) + static_cast<long double>(b)) / 2;
    return m * m * m;
  };
  for (;;) {
    const double up = std::nextafter(y, INFINITY);
    if (mid_cubed(y, up) < lx) {
      y = up;
      continue;
    }
    const double down = std::nextafter(y, 0.0);
    if (mid_cubed(down, y) > lx) {
      y = down;
      continue;
    }
    return y;
  }
}

}  // namespace lpp
