#pragma once

// Rotationally symmetric metrics g = A(t)^2 dt^2 + B(t)^2 g_{S^2} and the
// catalog of explicit metrics the toolkit verifies.

#include <map>
#include <optional>
#include <string>

#include "warpcheck/interval.hpp"
#include "warpcheck/jet.hpp"

namespace warpcheck {

using ParamMap = std::map<std::string, double>;

/// A warp function with analytic first and second derivatives.
class Warp {
 public:
  Warp() = default;
  explicit Warp(JetFn fn) : fn_(std::move(fn)) {}

  /// Wraps a value-only function; derivatives come from central differences
  /// with step 1e-5 * max(1, |t|).
  static Warp from_values(ScalarFn value);

  static Warp constant(double c);

  [[nodiscard]] Jet operator()(double t) const { return fn_(t); }
  [[nodiscard]] double value(double t) const { return fn_(t).value; }
  [[nodiscard]] explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  JetFn fn_;
};

struct MetricProfile {
  Interval domain;  ///< where the formulas are defined (may be infinite)
  Interval region;  ///< finite closed sampling region inside the domain
  Warp a;           ///< radial warp: g_tt = A^2
  Warp b;           ///< sphere radius: g_S2 coefficient B^2
  std::string label;

  [[nodiscard]] Jet A(double t) const { return a(t); }
  [[nodiscard]] Jet B(double t) const { return b(t); }
};

/// Closed-form harmonic function attached to a catalog entry, in the
/// entry's own coordinate.
struct HarmonicFormula {
  Jet3Fn g;
  std::string label;
};

struct CatalogEntry {
  std::string name;
  MetricProfile profile;
  ParamMap params;
  std::optional<double> expected_scalar_curvature;
  /// w as a function of the level value of `harmonic` (or of the coordinate
  /// harmonic when `harmonic` is empty).
  ScalarFn expected_w;
  std::optional<HarmonicFormula> harmonic;
  std::string domain_text;
  std::string notes;
};

/// Closed sampling region of an interval: open finite ends are pulled in by
/// eps * width, closed ends are kept.
Interval sampling_region(const Interval& domain, double eps = kDefaultMargin);

/// Flat R^3 in polar form, d rho^2 + rho^2 g_S2, sampled on [0.02, 20].
CatalogEntry euclidean(double eps = kDefaultMargin);

/// Spatial Schwarzschild (1 + c/r)^4 g_R3 in the conformal chart.
CatalogEntry schwarzschild(double c, double eps = kDefaultMargin);

/// Rigidity metric c^2/(t^4(1-t)^4) dt^2 + c^2/(t^2(1-t)^2) g_S2 on (0,1).
CatalogEntry thm1_metric(double c, double eps = kDefaultMargin);

/// c/(t^4(1+t)^4) dt^2 + c/(t^2(1+t)^2) g_S2 on (-inf,-1), sampled on
/// [t_lo, -1 - eps]. sqrt(c) is stored so the c (not c^2) convention holds.
CatalogEntry thm3_metric(double c, double t_lo = -50.0, double eps = kDefaultMargin);

/// The same scalar-flat metric in r = t(1+t):
/// c r^-4 (1+4r)^-1 [dr^2 + r^2 (1+4r) g_S2] on (0, inf).
CatalogEntry thm3_rcoord(double c, double t_lo = -50.0, double eps = kDefaultMargin);

/// Round cylinder R x S^2 (A = B = 1): K_rad = 0, K_tan = 1, Sc = 2.
/// Negative control for flatness checks.
CatalogEntry cylinder();

/// Smooth monotone change of coordinates t = phi(s), with derivatives through
/// third order (the pulled-back A needs phi''').
struct CoordinateMap {
  Jet3Fn phi;
  std::string label;
};

/// Pullback of a profile under t = phi(s):
/// A~(s) = A(phi(s)) |phi'(s)|, B~(s) = B(phi(s)).
/// Throws DomainError when phi' changes sign on a sample grid of new_domain
/// or when phi maps a sample point outside entry's domain.
CatalogEntry reparametrize(const CatalogEntry& entry, const CoordinateMap& map,
                           const Interval& new_domain, double eps = kDefaultMargin);

/// t = 1 - (1 + c/r)^{-1} inverted: r = c (1 - t) / t. Maps (0,1) onto
/// (0, inf), decreasing.
CoordinateMap schwarzschild_to_level_chart(double c);

/// r = t (1 + t). Maps (-inf,-1) onto (0, inf), decreasing.
CoordinateMap thm3_level_to_radius();

/// Perturbation of flat space used by randomized property tests:
/// A = 1 + a bump(t), B = t (1 + b bump(t)), bump a unit Gaussian centred at
/// `center` with width `width`, on [0.5, 2].
CatalogEntry perturbed_euclidean(double a, double b, double center, double width);

/// Conformally flat u^4 g_R3 with u = 1 + m/r - k r^2 (superharmonic for
/// k >= 0, so Sc = 48 k u^-5 >= 0), on [0.3, 1.5].
CatalogEntry superharmonic_conformal(double m, double k);

}  // namespace warpcheck
