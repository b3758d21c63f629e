#pragma once

#include <optional>

#include "warpcheck/profiles.hpp"

namespace warpcheck {

/// Derivatives of B with respect to arclength s, D = A^{-1} d/dt.
struct ArclengthDerivatives {
  double db = 0.0;   ///< DB  = B'/A
  double d2b = 0.0;  ///< D2B = B''/A^2 - B'A'/A^3
};

/// Curvature of a warped product at one radial coordinate.
///
/// With e1 the unit radial direction and e_a tangent to the spheres:
///   K_rad  sectional curvature of planes containing e1   (= -D2B/B)
///   K_tan  sectional curvature of the tangential plane   (= (1 - DB^2)/B^2)
///   Ric_11 = 2 K_rad, Ric_aa = K_rad + K_tan, Sc = 4 K_rad + 2 K_tan.
/// Signs are fixed so that the round cylinder has Sc = +2.
struct CurvaturePoint {
  double t = 0.0;
  double k_rad = 0.0;
  double k_tan = 0.0;
  double ric_11 = 0.0;
  double ric_aa = 0.0;
  double sc = 0.0;
};

/// Throws DomainError when A(t) <= 0.
ArclengthDerivatives arclength_derivatives(const MetricProfile& m, double t);

/// Closed-form curvature from the warp jets. Throws DomainError when A or B
/// is not positive at t.
CurvaturePoint curvature_at(const MetricProfile& m, double t);

/// Default finite-difference step of the oracle: 1e-3 times the local
/// coordinate scale min(max(1,|t|), distance to the nearest open domain
/// end).
double default_oracle_step(const MetricProfile& m, double t);

/// Independent curvature computation. Builds the coordinate metric
/// diag(A^2, B^2, B^2 sin^2 theta) from warp *values only*, differentiates it
/// numerically, forms Christoffel symbols and the full Riemann tensor at the
/// equator theta = pi/2, and contracts.
///
/// Throws DomainError when t is closer than 4 * step to an open domain end.
CurvaturePoint curvature_oracle(const MetricProfile& m, double t,
                                std::optional<double> step = std::nullopt);

}  // namespace warpcheck
