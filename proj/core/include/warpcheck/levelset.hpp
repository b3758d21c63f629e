#pragma once

// Level-set functionals of a radial harmonic and the monotone quantities
// built from w(t) = int_{l(t)} |grad G|^2. Every `t` here is a level value
// of G, not a coordinate.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "warpcheck/harmonic.hpp"

namespace warpcheck {

struct LevelSetReport {
  double t = 0.0;  ///< level value
  double x = 0.0;  ///< coordinate of the level sphere
  double area = 0.0;
  double grad_norm = 0.0;
  double w = 0.0;
  double w_prime_integral = 0.0;  ///< int_{l} <grad|grad G|, grad G>/|grad G|
  double w_prime_fd = 0.0;        ///< central differences of w
  double H = 0.0;
  double gauss_bonnet = 0.0;  ///< int_{l} Sc_{l}
};

/// Throws SingularError on a critical level or an unattained level value.
LevelSetReport level_report(const RadialHarmonic& h, double t);

enum class Spacing { uniform, log_to_anchor };

/// Grid of level values on [lo, hi]. log_to_anchor spaces the distances
/// |t - anchor| geometrically, clustering points towards a singular level
/// outside the grid (the (1+t)^-3 pole at t = -1).
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  int count = 512;
  Spacing spacing = Spacing::uniform;
  double anchor = 0.0;
};

std::vector<double> grid_points(const GridSpec& grid);

/// 512 uniform levels on [eps, 1 - eps].
GridSpec default_grid_plus(double eps = 1e-3, int count = 512);
/// 512 levels on [t_lo, -1 - eps], log-spaced near -1.
GridSpec default_grid_minus(double t_lo = -50.0, double eps = 1e-3, int count = 512);
/// Uniform levels across the level range of h.
GridSpec default_grid_mw(const RadialHarmonic& h, int count = 512);

enum class Quantity { plus, minus, mw };

std::string quantity_name(Quantity q);
std::optional<Quantity> parse_quantity(const std::string& name);

/// plus:  (1-t)^-3 t^-1 w - 4 pi (1-t)^-1   on (0,1)
/// minus: (1+t)^-3 t^-1 w + 4 pi (1+t)^-1   on (-inf,-1)
/// mw:    w/t - 4 pi t                      on (0,inf)
double monotone_value(Quantity q, double t, double w);

/// True when t lies in the open interval the quantity is defined on.
bool in_quantity_domain(Quantity q, double t);

struct MonotoneSeries {
  Quantity quantity = Quantity::plus;
  std::vector<double> ts;
  std::vector<double> values;
  std::vector<double> derivative_estimates;
  double max_derivative = 0.0;
  std::optional<double> constant_value;  ///< set when max|M - mean| < 1e-7 (1 + |mean|)
};

/// Throws DomainError when a grid point lies outside the quantity's domain.
MonotoneSeries monotone_series(const RadialHarmonic& h, Quantity q, const GridSpec& grid);
MonotoneSeries monotone_plus(const RadialHarmonic& h, const GridSpec& grid);
MonotoneSeries monotone_minus(const RadialHarmonic& h, const GridSpec& grid);
MonotoneSeries monotone_mw(const RadialHarmonic& h, const GridSpec& grid);

/// Assembles a series from precomputed values (derivatives, constancy).
MonotoneSeries make_series(Quantity q, std::vector<double> ts, std::vector<double> values);

/// Second-order derivative estimates on a non-uniform grid: three-point
/// central differences inside, one-sided three-point at the ends.
std::vector<double> grid_derivatives(const std::vector<double>& ts, const std::vector<double>& values);

struct MonotonicityVerdict {
  bool pass = false;
  std::size_t worst_index = 0;
  double worst_t = 0.0;
  double worst_derivative = 0.0;
  double tolerance = 0.0;
};

/// Passes iff every derivative estimate is <= tol.
MonotonicityVerdict monotonicity_verdict(const MonotoneSeries& s, double tol);

}  // namespace warpcheck
