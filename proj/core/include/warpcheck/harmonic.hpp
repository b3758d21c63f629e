#pragma once

// Radial harmonic functions on warped products and the frame quantities of
// their level sets.
//
// A radial G(t) is harmonic iff (B^2/A) G'(t) = k is constant (the flux). In
// the orthonormal frame e1 = grad G / |grad G|, e2, e3 the Hessian is
// diagonal:
//   G_11 = D^2 G,   G_22 = G_33 = (DB/B) DG,   G_11 + 2 G_22 = 0,
// where D = A^{-1} d/dt is the arclength derivative.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "warpcheck/profiles.hpp"

namespace warpcheck {

enum class HarmonicKind { coordinate, closed_form, quadrature };

class RadialHarmonic {
 public:
  /// Closed-form G supplied with three coordinate derivatives.
  static RadialHarmonic from_formula(MetricProfile metric, HarmonicFormula formula);

  /// G(t) = t. Only harmonic when A/B^2 is constant; see coordinate_harmonic.
  static RadialHarmonic coordinate(MetricProfile metric);

  /// G(t) = value_at_origin + flux * int_{origin}^{t} A/B^2.
  static RadialHarmonic from_flux(MetricProfile metric, double origin, double value_at_origin, double flux,
                                  std::string boundary);

  [[nodiscard]] const MetricProfile& metric() const { return metric_; }
  [[nodiscard]] HarmonicKind kind() const { return kind_; }
  [[nodiscard]] const std::string& boundary() const { return boundary_; }

  /// G and its coordinate derivatives at coordinate x.
  [[nodiscard]] Jet3 jet(double x) const;
  [[nodiscard]] double value(double x) const;

  /// (B^2/A) G' at the centre of the sampling region.
  [[nodiscard]] double flux() const;

  /// +1 when G increases with the coordinate, -1 otherwise.
  [[nodiscard]] int orientation() const;

  /// Level values of G at the ends of the sampling region, ascending.
  [[nodiscard]] std::pair<double, double> level_range() const;

  /// Coordinate x with G(x) = level. Searches the sampling region first and
  /// widens the bracket towards the domain ends. Throws SingularError when
  /// the level is not attained.
  [[nodiscard]] double coordinate_of_level(double level) const;

 private:
  RadialHarmonic() = default;

  MetricProfile metric_;
  HarmonicKind kind_ = HarmonicKind::coordinate;
  Jet3Fn formula_;
  double origin_ = 0.0;
  double origin_value_ = 0.0;
  double flux_ = 0.0;
  std::string boundary_;
};

/// Frame quantities of the level set through coordinate t.
struct HessianData {
  double t = 0.0;
  double level = 0.0;
  double grad_norm = 0.0;          ///< |grad G| = |DG|
  double u11 = 0.0;                ///< G_11
  double u_aa = 0.0;               ///< G_22 = G_33
  double hess_sq = 0.0;            ///< |Hess G|^2 = u11^2 + 2 u_aa^2
  double grad_grad_norm_sq = 0.0;  ///< |grad |grad G||^2 = u11^2
  double H = 0.0;                  ///< mean curvature of l(t), -u11/|grad G|
  double lap_grad_norm = 0.0;      ///< Laplacian of |grad G| by direct differentiation
};

/// Throws SingularError when the gradient vanishes at t.
HessianData hessian_data(const RadialHarmonic& h, double t);

/// D^2 G + 2 (DB/B) DG: the Laplacian of G.
double harmonicity_residual(const RadialHarmonic& h, double t);

/// (B^2/A) G'(t).
double first_integral(const RadialHarmonic& h, double t);

/// Maximum relative deviation of the first integral from its mean over
/// `count` interior points of the sampling region.
double first_integral_variation(const RadialHarmonic& h, int count = 64);

/// w = int_{l} |grad G|^2 and its derivative with respect to the level value,
/// dw/dt = int_{l} <grad|grad G|, grad G>/|grad G|, at coordinate x.
struct LevelEnergy {
  double w = 0.0;
  double w_prime = 0.0;
};
LevelEnergy level_energy(const RadialHarmonic& h, double x);

/// Harmonic with G(t0) = a and G(t1) = b, via adaptive quadrature of A/B^2.
/// Throws DomainError for t0 >= t1, endpoints outside the domain, or a == b;
/// SingularError when A/B^2 is not integrable on [t0, t1].
RadialHarmonic solve_radial_harmonic(const MetricProfile& m, double t0, double a, double t1, double b);

struct CoordinateHarmonicResult {
  std::optional<RadialHarmonic> harmonic;
  double variation = 0.0;  ///< relative variation of A/B^2 on the region
};

/// Accepts G = t when A/B^2 varies by less than 1e-10 (relative) over the
/// sampling region.
CoordinateHarmonicResult coordinate_harmonic(const MetricProfile& m);

/// The harmonic a catalog entry is verified with: its closed form when
/// present, else the coordinate function when that is harmonic, else the
/// quadrature solution normalised to G = 1 and G = 2 at the region ends.
RadialHarmonic canonical_harmonic(const CatalogEntry& entry);

enum class TheoremTag { plus, minus };

inline constexpr double kTestWeightPower = -2.0;  ///< f(t) = t^-2

/// A limit claim sampled along a geometric sequence towards an endpoint.
struct LimitSequence {
  std::string name;
  double endpoint = 0.0;
  std::vector<double> distances;
  std::vector<double> values;
  double fitted_order = 0.0;  ///< least-squares slope of log|value| vs log(distance)
  double final_magnitude = 0.0;
};

struct LimitReport {
  TheoremTag which = TheoremTag::plus;
  std::vector<LimitSequence> sequences;
  [[nodiscard]] const LimitSequence* find(const std::string& name) const;
};

/// Samples the boundary hypotheses on 8 levels at distances d0 * 2^-k from
/// each endpoint:
///   plus:  w/t at t -> 0, w/(1-t) at t -> 1, and the two integrands
///          f(G) dw/dt and f'(G) w at t -> 1;
///   minus: w/(1+t) at t -> -1 and the same integrands at t -> -1.
/// Report only; nothing is asserted.
LimitReport boundary_limit_checks(const RadialHarmonic& h, TheoremTag which, double d0 = 8e-3);

/// Least-squares slope of log|y| against log(x).
double fitted_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace warpcheck
