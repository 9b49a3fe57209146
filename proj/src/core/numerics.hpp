#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "errors.hpp"

namespace bhe {

inline constexpr int kMaxFactorialOrder = 20;

// n! for n <= 20, accumulated in long double. Orders beyond 20 are
// rejected everywhere (the physics of interest stays well below).
inline double factorial(int n) {
  if (n < 0 || n > kMaxFactorialOrder)
    throw_config("factorial order out of range [0,20]: " + std::to_string(n));
  long double acc = 1.0L;
  for (int k = 2; k <= n; ++k) acc *= static_cast<long double>(k);
  return static_cast<double>(acc);
}

// tanh(z/2) evaluated without cancellation near z = 0.
inline double tanh_half(double z) {
  if (std::abs(z) < 1e-4) {
    const double h = 0.5 * z;
    return h - h * h * h / 3.0;  // next term ~ h^5, < 1e-21 here
  }
  return std::tanh(0.5 * z);
}

// coth(z/2); diverges at z = 0, caller guards.
inline double coth_half(double z) {
  if (std::abs(z) < 1e-4) {
    const double h = 0.5 * z;
    return 1.0 / h + h / 3.0;
  }
  return 1.0 / std::tanh(0.5 * z);
}

// h(z) = z coth(z/2) >= 2, smooth through z = 0.
inline double h_of_z(double z) {
  if (std::abs(z) < 1e-4) return 2.0 + z * z / 6.0;
  return z / std::tanh(0.5 * z);
}

// log(sinh(a)) for a > 0, overflow-safe.
inline double log_sinh(double a) {
  if (a > 30.0) return a - std::numbers::ln2_v<double>;
  return std::log(std::sinh(a));
}

// sinh(a) / (sinh(b) * sinh(c)); any signs, evaluated in log space when the
// arguments are large enough for naive sinh to overflow.
inline double sinh_ratio(double a, double b, double c) {
  double sign = 1.0;
  if (a < 0) { sign = -sign; a = -a; }
  if (b < 0) { sign = -sign; b = -b; }
  if (c < 0) { sign = -sign; c = -c; }
  if (b == 0.0 || c == 0.0)
    throw_numeric("sinh_ratio: vanishing denominator argument");
  if (a > 30.0 || b > 30.0 || c > 30.0)
    return sign * std::exp(log_sinh(a) - log_sinh(b) - log_sinh(c));
  return sign * std::sinh(a) / (std::sinh(b) * std::sinh(c));
}

inline bool is_defined(double v) { return std::isfinite(v); }

inline double undefined_value() {
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace bhe
