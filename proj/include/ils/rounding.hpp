#pragma once

#include <cmath>

namespace ils {

// Nearest integer; a tie (fractional part exactly 0.5) resolves to the
// candidate with smaller magnitude: nint(10.5) = 10, nint(-10.5) = -10,
// nint(0.5) = 0.
inline long long nint(double x) {
  double fl = std::floor(x);
  if (x - fl == 0.5) return static_cast<long long>(x > 0.0 ? fl : fl + 1.0);
  return static_cast<long long>(std::floor(x + 0.5));
}

// Sign with sgn(0) = -1.
inline long long sgn(double x) { return x > 0.0 ? 1 : -1; }

inline double sq(double x) { return x * x; }

}  // namespace ils
