#include "warpcheck/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jet_ops.hpp"
#include "warpcheck/errors.hpp"

namespace warpcheck {

using detail::identity_jet;
using detail::pow;
using detail::operator*;
using std::numbers::pi;

Interval Interval::shrunk(double eps) const {
  if (!finite()) throw DomainError("cannot shrink an infinite interval " + str());
  const double margin = eps * width();
  Interval out{lo, hi, false, false};
  if (open_lo) out.lo += margin;
  if (open_hi) out.hi -= margin;
  return out;
}

double Interval::distance_to_boundary(double t) const {
  double d = kInf;
  if (std::isfinite(lo)) d = std::min(d, std::abs(t - lo));
  if (std::isfinite(hi)) d = std::min(d, std::abs(hi - t));
  return d;
}

double Interval::distance_to_open_end(double t) const {
  double d = kInf;
  if (open_lo && std::isfinite(lo)) d = std::min(d, std::abs(t - lo));
  if (open_hi && std::isfinite(hi)) d = std::min(d, std::abs(hi - t));
  return d;
}

std::string Interval::str() const {
  auto bound = [](double v) -> std::string {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << v;
    return os.str();
  };
  return std::string(open_lo ? "(" : "[") + bound(lo) + "," + bound(hi) + (open_hi ? ")" : "]");
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) throw DomainError("linspace needs at least two points");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

std::vector<double> interior_points(double lo, double hi, int count) {
  if (count < 1) throw DomainError("interior_points needs a positive count");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (hi - lo) / count;
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + step * (i + 0.5);
  return out;
}

Warp Warp::from_values(ScalarFn value) {
  return Warp([f = std::move(value)](double t) {
    const double h = 1e-5 * std::max(1.0, std::abs(t));
    const double fp = f(t + h);
    const double fm = f(t - h);
    const double f0 = f(t);
    return Jet{f0, (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
  });
}

Warp Warp::constant(double c) {
  return Warp([c](double) { return Jet{c, 0.0, 0.0}; });
}

Interval sampling_region(const Interval& domain, double eps) { return domain.shrunk(eps); }

namespace {

void require_positive(double c, const char* what) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << what << " requires c > 0 (got " << c << ")";
    throw DomainError(os.str());
  }
}

void require_margin(double eps) {
  if (!(eps > 0.0 && eps < 0.1)) throw DomainError("epsilon margin must lie in (0, 0.1)");
}

}  // namespace

CatalogEntry euclidean(double eps) {
  require_margin(eps);
  CatalogEntry e;
  e.name = "euclidean";
  e.profile.domain = {0.0, kInf, true, true};
  // Truncated to rho <= 20; the open end at 0 keeps the relative margin.
  e.profile.region = Interval{0.0, 20.0, true, false}.shrunk(eps);
  e.profile.a = Warp::constant(1.0);
  e.profile.b = Warp([](double r) { return Jet{r, 1.0, 0.0}; });
  e.profile.label = "euclidean";
  e.expected_scalar_curvature = 0.0;
  e.expected_w = [](double level) { return 4.0 * pi * level * level; };
  e.harmonic = HarmonicFormula{
      [](double r) { return Jet3{1.0 / r, -1.0 / (r * r), 2.0 / (r * r * r), -6.0 / (r * r * r * r)}; },
      "G = 1/rho"};
  e.domain_text = "(0,inf)";
  e.notes = "flat R^3 in polar coordinates";
  return e;
}

CatalogEntry schwarzschild(double c, double eps) {
  require_positive(c, "schwarzschild");
  require_margin(eps);
  CatalogEntry e;
  e.name = "schwarzschild";
  e.params = {{"c", c}};
  e.profile.domain = {0.0, kInf, true, true};
  e.profile.region = Interval{0.0, 20.0 * c, true, false}.shrunk(eps);
  // u = 1 + c/r, A = u^2, B = r u^2.
  auto u = [c](double r) { return Jet{1.0 + c / r, -c / (r * r), 2.0 * c / (r * r * r)}; };
  e.profile.a = Warp([u](double r) { return pow(u(r), 2.0); });
  e.profile.b = Warp([u](double r) {
    return identity_jet(r) * pow(u(r), 2.0);
  });
  e.profile.label = "schwarzschild";
  e.expected_scalar_curvature = 0.0;
  e.expected_w = [](double level) {
    const double p = level * (1.0 - level);
    return 4.0 * pi * p * p;
  };
  e.harmonic = HarmonicFormula{
      [c](double r) {
        const double s = r + c;
        return Jet3{c / s, -c / (s * s), 2.0 * c / (s * s * s), -6.0 * c / (s * s * s * s)};
      },
      "G = 1 - (1 + c/r)^-1"};
  e.domain_text = "(0,inf)";
  e.notes = "conformal chart (1+c/r)^4 g_R3";
  return e;
}

CatalogEntry thm1_metric(double c, double eps) {
  require_positive(c, "thm1");
  require_margin(eps);
  CatalogEntry e;
  e.name = "thm1";
  e.params = {{"c", c}};
  e.profile.domain = {0.0, 1.0, true, true};
  e.profile.region = e.profile.domain.shrunk(eps);
  auto p = [](double t) { return Jet{t * (1.0 - t), 1.0 - 2.0 * t, -2.0}; };
  e.profile.a = Warp([p, c](double t) { return c * pow(p(t), -2.0); });
  e.profile.b = Warp([p, c](double t) { return c * pow(p(t), -1.0); });
  e.profile.label = "thm1";
  e.expected_scalar_curvature = 0.0;
  e.expected_w = [](double level) {
    const double q = level * (1.0 - level);
    return 4.0 * pi * q * q;
  };
  e.domain_text = "(0,1)";
  e.notes = "rigidity metric of the (1-t)^-3 t^-1 w - 4 pi (1-t)^-1 formula";
  return e;
}

CatalogEntry thm3_metric(double c, double t_lo, double eps) {
  require_positive(c, "thm3");
  require_margin(eps);
  if (!(t_lo < -1.0 - eps)) throw DomainError("thm3 truncation t_lo must lie below -1 - eps");
  CatalogEntry e;
  e.name = "thm3";
  e.params = {{"c", c}};
  const double root_c = std::sqrt(c);
  e.profile.domain = {-kInf, -1.0, true, true};
  e.profile.region = {t_lo, -1.0 - eps, false, false};
  // For t < -1, |t|(|t| - 1) = t (1 + t) > 0.
  auto q = [](double t) { return Jet{t * (1.0 + t), 1.0 + 2.0 * t, 2.0}; };
  e.profile.a = Warp([q, root_c](double t) { return root_c * pow(q(t), -2.0); });
  e.profile.b = Warp([q, root_c](double t) { return root_c * pow(q(t), -1.0); });
  e.profile.label = "thm3";
  e.expected_scalar_curvature = 0.0;
  e.expected_w = [](double level) {
    const double s = level * (1.0 + level);
    return 4.0 * pi * s * s;
  };
  e.domain_text = "(-inf,-1)";
  e.notes = "scalar-flat metric of the (1+t)^-3 t^-1 w + 4 pi (1+t)^-1 formula";
  return e;
}

CatalogEntry thm3_rcoord(double c, double t_lo, double eps) {
  require_positive(c, "thm3-rcoord");
  require_margin(eps);
  if (!(t_lo < -1.0 - eps)) throw DomainError("thm3-rcoord truncation t_lo must lie below -1 - eps");
  CatalogEntry e;
  e.name = "thm3-rcoord";
  e.params = {{"c", c}};
  const double root_c = std::sqrt(c);
  const double t_hi = -1.0 - eps;
  e.profile.domain = {0.0, kInf, true, true};
  e.profile.region = {t_hi * (1.0 + t_hi), t_lo * (1.0 + t_lo), false, false};
  e.profile.a = Warp([root_c](double r) {
    const Jet s{1.0 + 4.0 * r, 4.0, 0.0};
    return root_c * (pow(identity_jet(r), -2.0) * pow(s, -0.5));
  });
  e.profile.b = Warp([root_c](double r) { return root_c * pow(identity_jet(r), -1.0); });
  e.profile.label = "thm3-rcoord";
  e.expected_scalar_curvature = 0.0;
  e.expected_w = [](double level) {
    const double s = level * (1.0 + level);
    return 4.0 * pi * s * s;
  };
  e.harmonic = HarmonicFormula{
      [](double r) {
        const double s = std::sqrt(1.0 + 4.0 * r);
        return Jet3{-0.5 - 0.5 * s, -1.0 / s, 2.0 / (s * s * s), -12.0 / (s * s * s * s * s)};
      },
      "G = -1/2 - 1/2 sqrt(1 + 4r)"};
  e.domain_text = "(0,inf)";
  e.notes = "r = t(1+t) chart of thm3";
  return e;
}

CatalogEntry cylinder() {
  CatalogEntry e;
  e.name = "cylinder";
  e.profile.domain = {-kInf, kInf, true, true};
  e.profile.region = {1.0, 5.0, false, false};
  e.profile.a = Warp::constant(1.0);
  e.profile.b = Warp::constant(1.0);
  e.profile.label = "cylinder";
  e.expected_scalar_curvature = 2.0;
  e.expected_w = [](double) { return 4.0 * pi; };
  e.domain_text = "(-inf,inf)";
  e.notes = "round cylinder R x S^2, not scalar-flat";
  return e;
}

CatalogEntry reparametrize(const CatalogEntry& entry, const CoordinateMap& map,
                           const Interval& new_domain, double eps) {
  if (!new_domain.valid()) throw DomainError("reparametrize: empty new domain");
  const Interval region = new_domain.finite() ? new_domain.shrunk(eps) : sampling_region(entry.profile.region);
  int sign = 0;
  for (double s : linspace(region.lo, region.hi, 257)) {
    const Jet3 p = map.phi(s);
    const int here = p.d1 > 0.0 ? 1 : (p.d1 < 0.0 ? -1 : 0);
    if (here == 0 || (sign != 0 && here != sign)) {
      throw DomainError("reparametrize: map " + map.label + " is not strictly monotone on " + region.str());
    }
    sign = here;
    if (!entry.profile.domain.contains(p.value)) {
      throw DomainError("reparametrize: map " + map.label + " leaves the domain " + entry.profile.domain.str());
    }
  }
  const double sigma = static_cast<double>(sign);

  CatalogEntry out = entry;
  out.profile.domain = new_domain;
  out.profile.region = region;
  out.profile.label = entry.profile.label + " via " + map.label;
  const MetricProfile base = entry.profile;
  const Jet3Fn phi = map.phi;
  out.profile.a = Warp([base, phi, sigma](double s) {
    const Jet3 p = phi(s);
    const Jet a = base.A(p.value);
    return Jet{sigma * a.value * p.d1, sigma * (a.d1 * p.d1 * p.d1 + a.value * p.d2),
               sigma * (a.d2 * p.d1 * p.d1 * p.d1 + 3.0 * a.d1 * p.d1 * p.d2 + a.value * p.d3)};
  });
  out.profile.b = Warp([base, phi](double s) {
    const Jet3 p = phi(s);
    const Jet b = base.B(p.value);
    return Jet{b.value, b.d1 * p.d1, b.d2 * p.d1 * p.d1 + b.d1 * p.d2};
  });
  if (entry.harmonic) {
    const Jet3Fn g = entry.harmonic->g;
    out.harmonic = HarmonicFormula{
        [g, phi](double s) {
          const Jet3 p = phi(s);
          const Jet3 u = g(p.value);
          return Jet3{u.value, u.d1 * p.d1, u.d2 * p.d1 * p.d1 + u.d1 * p.d2,
                      u.d3 * p.d1 * p.d1 * p.d1 + 3.0 * u.d2 * p.d1 * p.d2 + u.d1 * p.d3};
        },
        entry.harmonic->label + " pulled back"};
  }
  out.domain_text = new_domain.str();
  out.notes = entry.notes + "; reparametrized by " + map.label;
  return out;
}

CoordinateMap schwarzschild_to_level_chart(double c) {
  require_positive(c, "schwarzschild chart");
  return {[c](double t) {
            return Jet3{c * (1.0 - t) / t, -c / (t * t), 2.0 * c / (t * t * t), -6.0 * c / (t * t * t * t)};
          },
          "r = c(1-t)/t"};
}

CoordinateMap thm3_level_to_radius() {
  return {[](double t) { return Jet3{t * (1.0 + t), 1.0 + 2.0 * t, 2.0, 0.0}; }, "r = t(1+t)"};
}

namespace {

// Unit Gaussian exp(-(t - m)^2 / (2 s^2)) with two derivatives.
Jet gaussian_bump(double t, double center, double width) {
  const double x = (t - center) / width;
  const double g = std::exp(-0.5 * x * x);
  return {g, -x / width * g, (x * x - 1.0) / (width * width) * g};
}

}  // namespace

CatalogEntry perturbed_euclidean(double a, double b, double center, double width) {
  if (!(width > 0.0)) throw DomainError("perturbed_euclidean: width must be positive");
  CatalogEntry e;
  e.name = "perturbed";
  e.params = {{"a", a}, {"b", b}, {"center", center}, {"width", width}};
  e.profile.domain = {0.0, kInf, true, true};
  e.profile.region = {0.5, 2.0, false, false};
  e.profile.a = Warp([a, center, width](double t) {
    const Jet g = gaussian_bump(t, center, width);
    return Jet{1.0 + a * g.value, a * g.d1, a * g.d2};
  });
  e.profile.b = Warp([b, center, width](double t) {
    const Jet g = gaussian_bump(t, center, width);
    return identity_jet(t) * Jet{1.0 + b * g.value, b * g.d1, b * g.d2};
  });
  e.profile.label = "perturbed";
  e.domain_text = "[0.5,2]";
  e.notes = "Gaussian bump perturbation of flat space";
  return e;
}

CatalogEntry superharmonic_conformal(double m, double k) {
  if (m < 0.0 || k < 0.0) throw DomainError("superharmonic_conformal: m and k must be non-negative");
  CatalogEntry e;
  e.name = "conformal";
  e.params = {{"m", m}, {"k", k}};
  e.profile.domain = {0.0, kInf, true, true};
  e.profile.region = {0.3, 1.5, false, false};
  if (1.0 - k * 1.5 * 1.5 <= 0.0) throw DomainError("superharmonic_conformal: u must stay positive");
  auto u = [m, k](double r) {
    return Jet{1.0 + m / r - k * r * r, -m / (r * r) - 2.0 * k * r, 2.0 * m / (r * r * r) - 2.0 * k};
  };
  e.profile.a = Warp([u](double r) { return pow(u(r), 2.0); });
  e.profile.b = Warp([u](double r) { return identity_jet(r) * pow(u(r), 2.0); });
  e.profile.label = "conformal";
  e.expected_scalar_curvature = std::nullopt;
  e.domain_text = "[0.3,1.5]";
  e.notes = "u^4 g_R3 with superharmonic u, Sc = 48 k u^-5";
  return e;
}

}  // namespace warpcheck
