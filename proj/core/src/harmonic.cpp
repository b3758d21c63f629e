#include "warpcheck/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "warpcheck/curvature.hpp"
#include "warpcheck/errors.hpp"
#include "warpcheck/quadrature.hpp"

namespace warpcheck {

namespace {

using std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

// rho = A/B^2 and its first two coordinate derivatives.
Jet area_weight(const MetricProfile& m, double t) {
  const Jet a = m.A(t);
  const Jet b = m.B(t);
  const double b2 = b.value * b.value;
  const double b3 = b2 * b.value;
  const double b4 = b2 * b2;
  return {a.value / b2, a.d1 / b2 - 2.0 * a.value * b.d1 / b3,
          a.d2 / b2 - 4.0 * a.d1 * b.d1 / b3 - 2.0 * a.value * b.d2 / b3 +
              6.0 * a.value * b.d1 * b.d1 / b4};
}

struct FrameDerivatives {
  double dg = 0.0;   // DG
  double d2g = 0.0;  // D^2 G
  double d3g = 0.0;  // D^3 G
};

FrameDerivatives frame_derivatives(const RadialHarmonic& h, double t) {
  const Jet a = h.metric().A(t);
  const Jet3 g = h.jet(t);
  const double A = a.value;
  const double A2 = A * A;
  const double A3 = A2 * A;
  const double A4 = A2 * A2;
  const double A5 = A4 * A;
  FrameDerivatives d;
  d.dg = g.d1 / A;
  d.d2g = g.d2 / A2 - g.d1 * a.d1 / A3;
  d.d3g = g.d3 / A3 - 3.0 * g.d2 * a.d1 / A4 - g.d1 * a.d2 / A4 + 3.0 * g.d1 * a.d1 * a.d1 / A5;
  return d;
}

}  // namespace

RadialHarmonic RadialHarmonic::from_formula(MetricProfile metric, HarmonicFormula formula) {
  RadialHarmonic h;
  h.metric_ = std::move(metric);
  h.kind_ = HarmonicKind::closed_form;
  h.formula_ = std::move(formula.g);
  h.boundary_ = std::move(formula.label);
  return h;
}

RadialHarmonic RadialHarmonic::coordinate(MetricProfile metric) {
  RadialHarmonic h;
  h.metric_ = std::move(metric);
  h.kind_ = HarmonicKind::coordinate;
  h.boundary_ = "G = coordinate";
  return h;
}

RadialHarmonic RadialHarmonic::from_flux(MetricProfile metric, double origin, double value_at_origin,
                                         double flux, std::string boundary) {
  RadialHarmonic h;
  h.metric_ = std::move(metric);
  h.kind_ = HarmonicKind::quadrature;
  h.origin_ = origin;
  h.origin_value_ = value_at_origin;
  h.flux_ = flux;
  h.boundary_ = std::move(boundary);
  return h;
}

Jet3 RadialHarmonic::jet(double x) const {
  switch (kind_) {
    case HarmonicKind::coordinate:
      return {x, 1.0, 0.0, 0.0};
    case HarmonicKind::closed_form:
      return formula_(x);
    case HarmonicKind::quadrature: {
      const Jet w = area_weight(metric_, x);
      return {value(x), flux_ * w.value, flux_ * w.d1, flux_ * w.d2};
    }
  }
  return {};
}

double RadialHarmonic::value(double x) const {
  switch (kind_) {
    case HarmonicKind::coordinate:
      return x;
    case HarmonicKind::closed_form:
      return formula_(x).value;
    case HarmonicKind::quadrature: {
      const MetricProfile& m = metric_;
      const double integral = integrate([&m](double s) { return area_weight(m, s).value; }, origin_, x);
      return origin_value_ + flux_ * integral;
    }
  }
  return 0.0;
}

double RadialHarmonic::flux() const {
  if (kind_ == HarmonicKind::quadrature) return flux_;
  const double mid = 0.5 * (metric_.region.lo + metric_.region.hi);
  return first_integral(*this, mid);
}

int RadialHarmonic::orientation() const {
  const double mid = 0.5 * (metric_.region.lo + metric_.region.hi);
  return jet(mid).d1 >= 0.0 ? 1 : -1;
}

std::pair<double, double> RadialHarmonic::level_range() const {
  const double a = value(metric_.region.lo);
  const double b = value(metric_.region.hi);
  return {std::min(a, b), std::max(a, b)};
}

double RadialHarmonic::coordinate_of_level(double level) const {
  if (kind_ == HarmonicKind::coordinate) {
    if (!metric_.domain.contains(level)) {
      throw SingularError("level " + fmt(level) + " outside the domain " + metric_.domain.str());
    }
    return level;
  }
  auto residual = [this, level](double x) { return value(x) - level; };
  double lo = metric_.region.lo;
  double hi = metric_.region.hi;
  double flo = residual(lo);
  double fhi = residual(hi);
  const Interval& dom = metric_.domain;
  // Widen towards the domain ends until the level is bracketed.
  for (int it = 0; it < 200 && flo * fhi > 0.0; ++it) {
    const bool grow_lo = std::abs(flo) < std::abs(fhi);
    if (grow_lo) {
      const double next = std::isfinite(dom.lo) ? dom.lo + 0.25 * (lo - dom.lo) : lo - 2.0 * (1.0 + std::abs(lo));
      if (next == lo) break;
      hi = lo;
      fhi = flo;
      lo = next;
      flo = residual(lo);
    } else {
      const double next = std::isfinite(dom.hi) ? dom.hi - 0.25 * (dom.hi - hi) : hi + 2.0 * (1.0 + std::abs(hi));
      if (next == hi) break;
      lo = hi;
      flo = fhi;
      hi = next;
      fhi = residual(hi);
    }
    if (!std::isfinite(flo) || !std::isfinite(fhi)) break;
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0)) throw SingularError("level " + fmt(level) + " is not attained by " + boundary_);
  std::uintmax_t max_iter = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 4e-16 * std::max(std::abs(a), std::abs(b)); };
  const auto [x0, x1] = boost::math::tools::toms748_solve(residual, lo, hi, flo, fhi, tol, max_iter);
  return 0.5 * (x0 + x1);
}

HessianData hessian_data(const RadialHarmonic& h, double t) {
  const MetricProfile& m = h.metric();
  const ArclengthDerivatives arc = arclength_derivatives(m, t);
  const double b = m.b.value(t);
  const FrameDerivatives d = frame_derivatives(h, t);
  if (d.dg == 0.0 || !std::isfinite(d.dg)) {
    throw SingularError("hessian_data: gradient vanishes at t = " + fmt(t));
  }
  const double sigma = d.dg > 0.0 ? 1.0 : -1.0;
  const double ratio = arc.db / b;  // DB/B

  HessianData out;
  out.t = t;
  out.level = h.value(t);
  out.grad_norm = std::abs(d.dg);
  out.u11 = d.d2g;
  out.u_aa = ratio * d.dg;
  out.hess_sq = out.u11 * out.u11 + 2.0 * out.u_aa * out.u_aa;
  out.grad_grad_norm_sq = out.u11 * out.u11;
  out.H = -out.u11 / out.grad_norm;
  // |grad G| = sigma DG, so D|grad G| = sigma D^2 G and D^2|grad G| = sigma D^3 G.
  out.lap_grad_norm = sigma * (d.d3g + 2.0 * ratio * d.d2g);
  return out;
}

double harmonicity_residual(const RadialHarmonic& h, double t) {
  const ArclengthDerivatives arc = arclength_derivatives(h.metric(), t);
  const FrameDerivatives d = frame_derivatives(h, t);
  return d.d2g + 2.0 * (arc.db / h.metric().b.value(t)) * d.dg;
}

double first_integral(const RadialHarmonic& h, double t) {
  const double a = h.metric().a.value(t);
  const double b = h.metric().b.value(t);
  return b * b / a * h.jet(t).d1;
}

double first_integral_variation(const RadialHarmonic& h, int count) {
  const Interval& r = h.metric().region;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  double mean = 0.0;
  for (double t : interior_points(r.lo, r.hi, count)) {
    values.push_back(first_integral(h, t));
    mean += values.back();
  }
  mean /= static_cast<double>(values.size());
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v - mean));
  return worst / std::abs(mean);
}

LevelEnergy level_energy(const RadialHarmonic& h, double x) {
  const HessianData d = hessian_data(h, x);
  const double b = h.metric().b.value(x);
  const double area = 4.0 * pi * b * b;
  // <grad|grad G|, grad G>/|grad G| = G_11 on a radial level set.
  return {area * d.grad_norm * d.grad_norm, area * d.u11};
}

RadialHarmonic solve_radial_harmonic(const MetricProfile& m, double t0, double a, double t1, double b) {
  if (!(t0 < t1)) throw DomainError("solve_radial_harmonic: need t0 < t1");
  if (!m.domain.contains(t0) || !m.domain.contains(t1)) {
    throw DomainError("solve_radial_harmonic: endpoints outside the domain " + m.domain.str());
  }
  if (a == b) throw DomainError("solve_radial_harmonic: boundary values must differ (a != b)");
  double total = 0.0;
  try {
    total = integrate([&m](double s) { return area_weight(m, s).value; }, t0, t1);
  } catch (const SingularError& e) {
    throw SingularError(std::string("solve_radial_harmonic: singular boundary data: ") + e.what());
  }
  if (!std::isfinite(total) || total == 0.0) {
    throw SingularError("solve_radial_harmonic: A/B^2 is not integrable on [t0, t1]");
  }
  const double flux = (b - a) / total;
  return RadialHarmonic::from_flux(m, t0, a, flux,
                                   "G(" + fmt(t0) + ") = " + fmt(a) + ", G(" + fmt(t1) + ") = " + fmt(b));
}

CoordinateHarmonicResult coordinate_harmonic(const MetricProfile& m) {
  double lo = kInf;
  double hi = -kInf;
  double mean = 0.0;
  const std::vector<double> ts = linspace(m.region.lo, m.region.hi, 65);
  for (double t : ts) {
    const double w = area_weight(m, t).value;
    lo = std::min(lo, w);
    hi = std::max(hi, w);
    mean += w;
  }
  mean /= static_cast<double>(ts.size());
  CoordinateHarmonicResult out;
  out.variation = (hi - lo) / std::abs(mean);
  if (out.variation < 1e-10) out.harmonic = RadialHarmonic::coordinate(m);
  return out;
}

RadialHarmonic canonical_harmonic(const CatalogEntry& entry) {
  if (entry.harmonic) return RadialHarmonic::from_formula(entry.profile, *entry.harmonic);
  CoordinateHarmonicResult coord = coordinate_harmonic(entry.profile);
  if (coord.harmonic) return *coord.harmonic;
  const Interval& r = entry.profile.region;
  return solve_radial_harmonic(entry.profile, r.lo, 0.25, r.hi, 0.75);
}

const LimitSequence* LimitReport::find(const std::string& name) const {
  for (const auto& s : sequences)
    if (s.name == name) return &s;
  return nullptr;
}

double fitted_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

LimitReport boundary_limit_checks(const RadialHarmonic& h, TheoremTag which, double d0) {
  constexpr int kSamples = 8;
  std::vector<double> distances;
  for (int k = 0; k < kSamples; ++k) distances.push_back(d0 * std::pow(0.5, k));

  auto sequence = [&](std::string name, double endpoint, double direction, auto&& quantity) {
    LimitSequence s;
    s.name = std::move(name);
    s.endpoint = endpoint;
    s.distances = distances;
    for (double d : distances) {
      const double level = endpoint + direction * d;
      const double x = h.coordinate_of_level(level);
      s.values.push_back(quantity(level, level_energy(h, x)));
    }
    s.fitted_order = fitted_log_slope(s.distances, s.values);
    s.final_magnitude = std::abs(s.values.back());
    return s;
  };
  auto f = [](double t) { return std::pow(t, kTestWeightPower); };
  auto df = [](double t) { return kTestWeightPower * std::pow(t, kTestWeightPower - 1.0); };
  auto flux_term = [&](double t, const LevelEnergy& e) { return f(t) * e.w_prime; };
  auto weight_term = [&](double t, const LevelEnergy& e) { return df(t) * e.w; };

  LimitReport report;
  report.which = which;
  if (which == TheoremTag::plus) {
    report.sequences.push_back(sequence("w/t", 0.0, 1.0, [](double t, const LevelEnergy& e) { return e.w / t; }));
    report.sequences.push_back(
        sequence("w/(1-t)", 1.0, -1.0, [](double t, const LevelEnergy& e) { return e.w / (1.0 - t); }));
    report.sequences.push_back(sequence("f(G) dw/dt", 1.0, -1.0, flux_term));
    report.sequences.push_back(sequence("f'(G) w", 1.0, -1.0, weight_term));
  } else {
    report.sequences.push_back(
        sequence("w/(1+t)", -1.0, -1.0, [](double t, const LevelEnergy& e) { return e.w / (1.0 + t); }));
    report.sequences.push_back(sequence("f(G) dw/dt", -1.0, -1.0, flux_term));
    report.sequences.push_back(sequence("f'(G) w", -1.0, -1.0, weight_term));
  }
  return report;
}

}  // namespace warpcheck
