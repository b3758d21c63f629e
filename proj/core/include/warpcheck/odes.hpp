#pragma once

// The f-h compatibility equation, the Riccati equation it reduces to for
// f = r^-2, the w-evolution ODE, and the scalar-flat metric generator.
//
//   f'' + 3 (f' h + f h') + 3 f h^2 = 0
//   r^2 h' - 2 r h + r^2 h^2 + 2 = 0,   h_c(r) = (1 - 2cr) / (r - c r^2)
//   dw/dt = 2 h_c w,                    w = K t^2 (1 - ct)^2

#include <optional>
#include <string>
#include <vector>

#include "warpcheck/identities.hpp"
#include "warpcheck/profiles.hpp"

namespace warpcheck {

/// Evaluation is refused within this distance of r = 0 and r = 1/c.
inline constexpr double kPoleMargin = 1e-2;

struct FHPair {
  JetFn f;                   ///< needs f, f', f''
  JetFn h;                   ///< needs h, h'
  std::optional<double> c;   ///< family parameter when h is the closed form
};

/// h_c with two derivatives. No pole check.
Jet closed_form_h(double c, double r);

/// f = r^-2 with h = h_c.
FHPair closed_form_pair(double c);

/// f = r^-2 with an arbitrary h.
FHPair inverse_square_pair(JetFn h);

/// Left side of the f-h equation. Throws DomainError near a pole of h_c
/// (when c is set) or when f or h is not finite at r.
double fh_residual(const FHPair& p, double r);

/// r^2 h' - 2 r h + r^2 h^2 + 2. Throws DomainError for r <= 0, near a pole
/// of h_c when c is given, or when h is not finite.
double riccati_residual(const JetFn& h, double r, std::optional<double> c = std::nullopt);

/// Family parameter through (r0, h0): c = (1 - h0 r0) / (r0 (2 - h0 r0)).
/// Empty when h0 r0 = 2, the c -> infinity solution h = 2/r.
std::optional<double> fit_family_parameter(double r0, double h0);

/// Numerical solution of h' = (2 r h - r^2 h^2 - 2) / r^2 from (r0, h0)
/// towards r1 (either direction).
struct RiccatiSolution {
  double r0 = 0.0;
  double h0 = 0.0;
  double r1 = 0.0;
  std::vector<double> rs;  ///< accepted step points, in integration order
  std::vector<double> hs;
  std::vector<double> dhs;
  std::vector<double> d2hs;
  std::optional<double> fitted_c;
  std::optional<double> blowup_at;  ///< where |h| first exceeded 1e8
  /// max |h - h_c| over the covered range away from poles; empty when the
  /// comparison is skipped (degenerate c-fit).
  std::optional<double> closed_form_error;

  /// Quintic Hermite interpolation between step points. Throws DomainError
  /// outside the covered range.
  [[nodiscard]] double operator()(double r) const;
  [[nodiscard]] double covered_lo() const;
  [[nodiscard]] double covered_hi() const;
  [[nodiscard]] bool reached_end() const { return !blowup_at.has_value(); }
};

/// Embedded 4(5) pair, rtol 1e-10, atol 1e-12, maximum step |r1 - r0|/64.
/// A blow-up stops the integration and is recorded rather than thrown.
/// Throws DomainError for r0 <= 0, r1 <= 0 or r0 == r1.
RiccatiSolution integrate_riccati(double r0, double h0, double r1);

/// w = K t^2 (1 - ct)^2 on a domain free of zeros of t (1 - ct), validated
/// against numerical integration of dw/dt = 2 h_c w.
struct WSolution {
  double c_family = 0.0;
  double K = 0.0;
  Interval domain;
  double ode_relative_error = 0.0;  ///< over the sampling region of domain

  [[nodiscard]] double operator()(double t) const;
};

/// Throws DomainError when the domain (closed ends included) contains a zero
/// of t (1 - ct) or is invalid; SingularError when the ODE check exceeds 1e-8.
WSolution solve_w(double c_family, double K, const Interval& domain, double eps = kDefaultMargin);

/// (0, 1/c) for c > 0, (0, T] for c <= 0.
Interval default_family_domain(double c_family, double T = 1.0);

struct GeneratedMetric {
  double c_family = 0.0;
  double K = 0.0;
  double c0 = 0.0;
  WSolution w_eval;
  CatalogEntry entry;
};

/// A = 1/(c0 w), B = 1/(c0 sqrt(K w)) = 1/(c0 K |t (1 - ct)|), with G = t
/// harmonic. The K under the root keeps the metric scalar-flat for every K;
/// the metric's own level energy is then 4 pi t^2 (1 - ct)^2.
/// Throws DomainError when K <= 0, c0 <= 0 or the domain contains a zero of w.
GeneratedMetric generate_metric(double c_family, double K, double c0, const Interval& domain,
                                double eps = kDefaultMargin);

struct ScalarFlatReport {
  int npoints = 0;
  double max_sc_closed = 0.0;
  double worst_t_closed = 0.0;
  double max_sc_oracle = 0.0;
  double worst_t_oracle = 0.0;
  double closed_tolerance = 1e-8;
  double oracle_tolerance = 1e-6;
  bool pass = false;
};

/// max |Sc| over `npoints` interior points of the sampling region, by both
/// curvature paths. Pass iff closed < closed_tol and oracle < oracle_tol.
ScalarFlatReport scalar_flat_validate(const GeneratedMetric& gm, int npoints = 100, double closed_tol = 1e-8,
                                      double oracle_tol = 1e-6);

/// Pole-free sub-intervals of (0, 3/c] (c > 0) or [0.1, 3] (c <= 0) on
/// which the family is compared.
std::vector<Interval> pole_free_intervals(double c);

/// For one family parameter: the Riccati and f-h residuals of h_c on a
/// `count` point grid of each pole-free interval, and integrate_riccati from
/// three initial points per interval against the closed form.
std::vector<IdentityResidual> family_residuals(double c, int count = 20, const Tolerances& tol = {});

}  // namespace warpcheck
