#include "warpcheck/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "warpcheck/errors.hpp"
#include "warpcheck/parallel.hpp"

namespace warpcheck {

namespace {

using std::numbers::pi;

constexpr double kConstancyTolerance = 1e-7;

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

LevelSetReport level_report(const RadialHarmonic& h, double t) {
  const double x = h.coordinate_of_level(t);
  const MetricProfile& m = h.metric();
  const HessianData d = hessian_data(h, x);
  const double b = m.b.value(x);

  LevelSetReport r;
  r.t = t;
  r.x = x;
  r.area = 4.0 * pi * b * b;
  r.grad_norm = d.grad_norm;
  r.w = r.area * d.grad_norm * d.grad_norm;
  r.w_prime_integral = r.area * d.u11;
  r.H = d.H;
  r.gauss_bonnet = r.area * (2.0 / (b * b));

  // dw/dt = (dw/dx) / G'(x), with dw/dx from a five-point stencil.
  const double scale = std::min(std::max(1.0, std::abs(x)), 0.25 * m.domain.distance_to_open_end(x));
  const double step = 1e-3 * scale;
  auto w_at = [&](double s) { return level_energy(h, s).w; };
  const double dwdx = (-w_at(x + 2.0 * step) + 8.0 * w_at(x + step) - 8.0 * w_at(x - step) + w_at(x - 2.0 * step)) /
                      (12.0 * step);
  r.w_prime_fd = dwdx / h.jet(x).d1;
  return r;
}

std::vector<double> grid_points(const GridSpec& grid) {
  if (grid.count < 3) throw DomainError("grid needs at least 3 points");
  if (!(grid.lo < grid.hi)) throw DomainError("grid needs lo < hi");
  if (grid.spacing == Spacing::uniform) return linspace(grid.lo, grid.hi, grid.count);

  const double d_lo = std::abs(grid.lo - grid.anchor);
  const double d_hi = std::abs(grid.hi - grid.anchor);
  if (!(d_lo > 0.0 && d_hi > 0.0) || (grid.anchor > grid.lo && grid.anchor < grid.hi)) {
    throw DomainError("log-spaced grid anchor must lie outside [lo, hi]");
  }
  const double sign = grid.lo > grid.anchor ? 1.0 : -1.0;
  std::vector<double> out(static_cast<std::size_t>(grid.count));
  const double ratio = std::log(d_hi / d_lo);
  for (int i = 0; i < grid.count; ++i) {
    const double frac = static_cast<double>(i) / (grid.count - 1);
    out[static_cast<std::size_t>(i)] = grid.anchor + sign * d_lo * std::exp(ratio * frac);
  }
  out.front() = grid.lo;
  out.back() = grid.hi;
  return out;
}

GridSpec default_grid_plus(double eps, int count) { return {eps, 1.0 - eps, count, Spacing::uniform, 0.0}; }

GridSpec default_grid_minus(double t_lo, double eps, int count) {
  return {t_lo, -1.0 - eps, count, Spacing::log_to_anchor, -1.0};
}

GridSpec default_grid_mw(const RadialHarmonic& h, int count) {
  const auto [lo, hi] = h.level_range();
  return {lo, hi, count, Spacing::uniform, 0.0};
}

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::plus:
      return "plus";
    case Quantity::minus:
      return "minus";
    case Quantity::mw:
      return "mw";
  }
  return "plus";
}

std::optional<Quantity> parse_quantity(const std::string& name) {
  if (name == "plus") return Quantity::plus;
  if (name == "minus") return Quantity::minus;
  if (name == "mw") return Quantity::mw;
  return std::nullopt;
}

double monotone_value(Quantity q, double t, double w) {
  switch (q) {
    case Quantity::plus:
      return std::pow(1.0 - t, -3.0) / t * w - 4.0 * pi / (1.0 - t);
    case Quantity::minus:
      return std::pow(1.0 + t, -3.0) / t * w + 4.0 * pi / (1.0 + t);
    case Quantity::mw:
      return w / t - 4.0 * pi * t;
  }
  return 0.0;
}

bool in_quantity_domain(Quantity q, double t) {
  switch (q) {
    case Quantity::plus:
      return t > 0.0 && t < 1.0;
    case Quantity::minus:
      return t < -1.0;
    case Quantity::mw:
      return t > 0.0;
  }
  return false;
}

std::vector<double> grid_derivatives(const std::vector<double>& ts, const std::vector<double>& values) {
  const std::size_t n = ts.size();
  if (n < 3 || values.size() != n) throw DomainError("grid_derivatives needs at least 3 matched points");
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = ts[i] - ts[i - 1];
    const double h2 = ts[i + 1] - ts[i];
    d[i] = -h2 / (h1 * (h1 + h2)) * values[i - 1] + (h2 - h1) / (h1 * h2) * values[i] +
           h1 / (h2 * (h1 + h2)) * values[i + 1];
  }
  {
    const double h1 = ts[1] - ts[0];
    const double h2 = ts[2] - ts[1];
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * values[0] + (h1 + h2) / (h1 * h2) * values[1] -
           h1 / (h2 * (h1 + h2)) * values[2];
  }
  {
    const double h1 = ts[n - 2] - ts[n - 3];
    const double h2 = ts[n - 1] - ts[n - 2];
    d[n - 1] = h2 / (h1 * (h1 + h2)) * values[n - 3] - (h1 + h2) / (h1 * h2) * values[n - 2] +
               (2.0 * h2 + h1) / (h2 * (h1 + h2)) * values[n - 1];
  }
  return d;
}

MonotoneSeries make_series(Quantity q, std::vector<double> ts, std::vector<double> values) {
  MonotoneSeries s;
  s.quantity = q;
  s.ts = std::move(ts);
  s.values = std::move(values);
  s.derivative_estimates = grid_derivatives(s.ts, s.values);
  s.max_derivative = *std::max_element(s.derivative_estimates.begin(), s.derivative_estimates.end());
  double mean = 0.0;
  for (double v : s.values) mean += v;
  mean /= static_cast<double>(s.values.size());
  double spread = 0.0;
  for (double v : s.values) spread = std::max(spread, std::abs(v - mean));
  if (spread < kConstancyTolerance * (1.0 + std::abs(mean))) s.constant_value = mean;
  return s;
}

MonotoneSeries monotone_series(const RadialHarmonic& h, Quantity q, const GridSpec& grid) {
  std::vector<double> ts = grid_points(grid);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] > ts[i - 1])) throw DomainError("grid must be strictly increasing");
  }
  for (double t : ts) {
    if (!in_quantity_domain(q, t)) {
      throw DomainError("grid point " + fmt(t) + " outside the domain of quantity " + quantity_name(q));
    }
  }
  // G is monotone, so the end levels decide whether the grid is attained.
  for (double t : {ts.front(), ts.back()}) {
    try {
      (void)h.coordinate_of_level(t);
    } catch (const SingularError&) {
      throw DomainError("grid level " + fmt(t) + " is not attained on " + h.metric().domain.str());
    }
  }
  std::vector<double> values(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    const double x = h.coordinate_of_level(ts[i]);
    values[i] = monotone_value(q, ts[i], level_energy(h, x).w);
  });
  return make_series(q, std::move(ts), std::move(values));
}

MonotoneSeries monotone_plus(const RadialHarmonic& h, const GridSpec& grid) {
  return monotone_series(h, Quantity::plus, grid);
}

MonotoneSeries monotone_minus(const RadialHarmonic& h, const GridSpec& grid) {
  return monotone_series(h, Quantity::minus, grid);
}

MonotoneSeries monotone_mw(const RadialHarmonic& h, const GridSpec& grid) {
  return monotone_series(h, Quantity::mw, grid);
}

MonotonicityVerdict monotonicity_verdict(const MonotoneSeries& s, double tol) {
  MonotonicityVerdict v;
  v.tolerance = tol;
  if (s.derivative_estimates.empty()) return v;
  const auto it = std::max_element(s.derivative_estimates.begin(), s.derivative_estimates.end());
  v.worst_index = static_cast<std::size_t>(it - s.derivative_estimates.begin());
  v.worst_t = s.ts[v.worst_index];
  v.worst_derivative = *it;
  v.pass = *it <= tol;
  return v;
}

}  // namespace warpcheck
