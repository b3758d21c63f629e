#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's differentiation or curvature code.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

inline double d1(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double d2(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

// Scalar curvature of A^2 dt^2 + B^2 g_S2 written directly in the
// coordinate: Sc = 2/B^2 - 2B'^2/(A^2 B^2) - 4B''/(A^2 B) + 4A'B'/(A^3 B).
inline double scalar_curvature(double a, double a1, double b, double b1, double b2) {
  return 2.0 / (b * b) - 2.0 * b1 * b1 / (a * a * b * b) - 4.0 * b2 / (a * a * b) + 4.0 * a1 * b1 / (a * a * a * b);
}

// Level energy of the thm1 rigidity metric, by hand: |grad t| = 1/A, so
// w = 4 pi B^2 / A^2 = 4 pi t^2 (1-t)^2.
inline double w_thm1(double t) { return 4.0 * pi * t * t * (1.0 - t) * (1.0 - t); }

inline double w_thm3(double t) { return 4.0 * pi * t * t * (1.0 + t) * (1.0 + t); }

}  // namespace oracle
