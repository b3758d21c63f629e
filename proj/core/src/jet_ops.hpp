#pragma once

// Chain and product rules on second-order jets. Internal to warpcheck_core.

#include <cmath>

#include "warpcheck/jet.hpp"

namespace warpcheck::detail {

inline Jet identity_jet(double t) { return {t, 1.0, 0.0}; }

inline Jet operator*(const Jet& u, const Jet& v) {
  return {u.value * v.value, u.d1 * v.value + u.value * v.d1,
          u.d2 * v.value + 2.0 * u.d1 * v.d1 + u.value * v.d2};
}

inline Jet operator*(double s, const Jet& u) { return {s * u.value, s * u.d1, s * u.d2}; }

inline Jet operator+(const Jet& u, const Jet& v) {
  return {u.value + v.value, u.d1 + v.d1, u.d2 + v.d2};
}

/// u^n for real n; u must be positive unless n is a non-negative integer.
inline Jet pow(const Jet& u, double n) {
  const double p = std::pow(u.value, n);
  const double p1 = n * std::pow(u.value, n - 1.0);
  const double p2 = n * (n - 1.0) * std::pow(u.value, n - 2.0);
  return {p, p1 * u.d1, p2 * u.d1 * u.d1 + p1 * u.d2};
}

/// Composition f(u(t)) where `outer` holds f, f', f'' at u(t).
inline Jet compose(const Jet& outer, const Jet& inner) {
  return {outer.value, outer.d1 * inner.d1,
          outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2};
}

}  // namespace warpcheck::detail
