#include "warpcheck/odes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "jet_ops.hpp"
#include "warpcheck/curvature.hpp"
#include "warpcheck/errors.hpp"

namespace warpcheck {

namespace {

using std::numbers::pi;
using State = std::array<double, 1>;
namespace odeint = boost::numeric::odeint;

constexpr double kBlowup = 1e8;
constexpr double kRtol = 1e-10;
constexpr double kAtol = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

bool near_pole(double c, double r) {
  if (std::abs(r) < kPoleMargin) return true;
  return c != 0.0 && std::abs(r - 1.0 / c) < kPoleMargin;
}

double riccati_rhs(double r, double h) { return (2.0 * r * h - r * r * h * h - 2.0) / (r * r); }

// h'' along a solution: d/dr of the right side.
double riccati_rhs_d1(double r, double h) {
  const double dh = riccati_rhs(r, h);
  return -2.0 * h / (r * r) + 4.0 / (r * r * r) + (2.0 / r - 2.0 * h) * dh;
}

Jet inverse_square(double r) { return {1.0 / (r * r), -2.0 / (r * r * r), 6.0 / (r * r * r * r)}; }

}  // namespace

Jet closed_form_h(double c, double r) {
  const double n = 1.0 - 2.0 * c * r;
  const double n1 = -2.0 * c;
  const double d = r - c * r * r;
  const double d1 = 1.0 - 2.0 * c * r;
  const double d2 = -2.0 * c;
  const double q = n1 * d - n * d1;
  return {n / d, q / (d * d), -n * d2 / (d * d) - 2.0 * d1 * q / (d * d * d)};
}

FHPair closed_form_pair(double c) {
  return {inverse_square, [c](double r) { return closed_form_h(c, r); }, c};
}

FHPair inverse_square_pair(JetFn h) { return {inverse_square, std::move(h), std::nullopt}; }

double fh_residual(const FHPair& p, double r) {
  if (p.c && near_pole(*p.c, r)) {
    throw DomainError("fh_residual: r = " + fmt(r) + " is within " + fmt(kPoleMargin) + " of a pole of h");
  }
  const Jet f = p.f(r);
  const Jet h = p.h(r);
  const double out = f.d2 + 3.0 * (f.d1 * h.value + f.value * h.d1) + 3.0 * f.value * h.value * h.value;
  if (!std::isfinite(out)) throw DomainError("fh_residual: f or h not finite at r = " + fmt(r));
  return out;
}

double riccati_residual(const JetFn& h, double r, std::optional<double> c) {
  if (!(r > 0.0)) throw DomainError("riccati_residual requires r > 0");
  if (c && near_pole(*c, r)) {
    throw DomainError("riccati_residual: r = " + fmt(r) + " is within " + fmt(kPoleMargin) + " of a pole of h");
  }
  const Jet j = h(r);
  const double out = r * r * j.d1 - 2.0 * r * j.value + r * r * j.value * j.value + 2.0;
  if (!std::isfinite(out)) throw DomainError("riccati_residual: h not finite at r = " + fmt(r));
  return out;
}

std::optional<double> fit_family_parameter(double r0, double h0) {
  const double denom = r0 * (2.0 - h0 * r0);
  if (std::abs(2.0 - h0 * r0) < 1e-12) return std::nullopt;
  return (1.0 - h0 * r0) / denom;
}

double RiccatiSolution::covered_lo() const { return std::min(rs.front(), rs.back()); }
double RiccatiSolution::covered_hi() const { return std::max(rs.front(), rs.back()); }

double RiccatiSolution::operator()(double r) const {
  if (rs.empty() || r < covered_lo() || r > covered_hi()) {
    throw DomainError("Riccati solution not available at r = " + fmt(r));
  }
  const std::size_t n = rs.size();
  if (n == 1) return hs.front();
  // Nodes are monotone in integration order; search in increasing order.
  const bool forward = rs.back() > rs.front();
  std::size_t i = 0;
  if (forward) {
    i = static_cast<std::size_t>(std::upper_bound(rs.begin(), rs.end(), r) - rs.begin());
  } else {
    i = static_cast<std::size_t>(
        std::upper_bound(rs.begin(), rs.end(), r, [](double a, double b) { return a > b; }) - rs.begin());
  }
  i = std::clamp<std::size_t>(i, 1, n - 1);
  const double x0 = rs[i - 1];
  const double dx = rs[i] - x0;
  const double s = (r - x0) / dx;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double s4 = s3 * s;
  const double s5 = s4 * s;
  // Quintic Hermite on value, h' and h'' (both from the equation itself).
  const double dx2 = dx * dx;
  return (1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5) * hs[i - 1] + (s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5) * dx * dhs[i - 1] +
         (0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5) * dx2 * d2hs[i - 1] + (10.0 * s3 - 15.0 * s4 + 6.0 * s5) * hs[i] +
         (-4.0 * s3 + 7.0 * s4 - 3.0 * s5) * dx * dhs[i] + (0.5 * s3 - s4 + 0.5 * s5) * dx2 * d2hs[i];
}

RiccatiSolution integrate_riccati(double r0, double h0, double r1) {
  if (!(r0 > 0.0) || !(r1 > 0.0)) throw DomainError("integrate_riccati requires r0, r1 > 0");
  if (r0 == r1) throw DomainError("integrate_riccati requires r0 != r1");
  if (!std::isfinite(h0)) throw DomainError("integrate_riccati requires a finite initial value");

  RiccatiSolution sol;
  sol.r0 = r0;
  sol.h0 = h0;
  sol.r1 = r1;
  sol.fitted_c = fit_family_parameter(r0, h0);

  // Integrate in tau = |r - r0| so the stepper always moves forward.
  const double dir = r1 > r0 ? 1.0 : -1.0;
  const double length = std::abs(r1 - r0);
  const double max_step = length / 64.0;
  auto system = [r0, dir](const State& x, State& dxdt, double tau) {
    dxdt[0] = dir * riccati_rhs(r0 + dir * tau, x[0]);
  };
  auto stepper = odeint::make_controlled(kAtol, kRtol, max_step, odeint::runge_kutta_dopri5<State>());

  auto record = [&sol](double r, double h) {
    sol.rs.push_back(r);
    sol.hs.push_back(h);
    sol.dhs.push_back(riccati_rhs(r, h));
    sol.d2hs.push_back(riccati_rhs_d1(r, h));
  };

  State x{h0};
  double tau = 0.0;
  double dt = max_step / 16.0;
  record(r0, h0);
  int rejections = 0;
  while (tau < length) {
    if (tau + dt > length) dt = length - tau;
    const odeint::controlled_step_result res = stepper.try_step(system, x, tau, dt);
    if (res == odeint::fail) {
      if (++rejections > 10000 || dt < 1e-15 * length) {
        sol.blowup_at = r0 + dir * tau;
        break;
      }
      continue;
    }
    rejections = 0;
    const double r = r0 + dir * tau;
    if (!std::isfinite(x[0]) || std::abs(x[0]) > kBlowup) {
      sol.blowup_at = r;
      break;
    }
    record(r, x[0]);
    if (length - tau < 1e-14 * length) break;
  }
  if (!sol.blowup_at && sol.rs.size() > 1) {
    sol.rs.back() = r1;  // absorb the final rounding of tau
    sol.dhs.back() = riccati_rhs(r1, sol.hs.back());
    sol.d2hs.back() = riccati_rhs_d1(r1, sol.hs.back());
  }

  if (sol.fitted_c) {
    const double c = *sol.fitted_c;
    const double lo = sol.covered_lo();
    const double hi = sol.covered_hi();
    double worst = 0.0;
    constexpr int kSamples = 400;
    for (int i = 0; i <= kSamples; ++i) {
      const double r = lo + (hi - lo) * i / kSamples;
      if (near_pole(c, r)) continue;
      const double exact = closed_form_h(c, r).value;
      // Near a blow-up the trajectory is huge; compare relatively there.
      worst = std::max(worst, std::abs(sol(r) - exact) / std::max(1.0, std::abs(exact)));
    }
    sol.closed_form_error = worst;
  }
  return sol;
}

double WSolution::operator()(double t) const {
  const double p = t * (1.0 - c_family * t);
  return K * p * p;
}

Interval default_family_domain(double c_family, double T) {
  if (c_family > 0.0) return {0.0, 1.0 / c_family, true, true};
  return {0.0, T, true, false};
}

namespace {

// A zero of t (1 - ct) inside the domain, or at a closed end.
std::optional<double> zero_in(const Interval& d, double c) {
  std::vector<double> zeros{0.0};
  if (c != 0.0) zeros.push_back(1.0 / c);
  for (double z : zeros) {
    const bool inside = z > d.lo && z < d.hi;
    const bool closed_end = (z == d.lo && !d.open_lo) || (z == d.hi && !d.open_hi);
    if (inside || closed_end) return z;
  }
  return std::nullopt;
}

}  // namespace

WSolution solve_w(double c_family, double K, const Interval& domain, double eps) {
  if (!domain.valid() || !domain.finite()) throw DomainError("solve_w needs a finite interval lo < hi");
  if (const auto z = zero_in(domain, c_family)) {
    throw DomainError("domain " + domain.str() + " contains the zero t = " + fmt(*z) + " of t(1 - c t)");
  }
  WSolution w{c_family, K, domain, 0.0};
  const Interval region = domain.shrunk(eps);
  if (K == 0.0) return w;

  // dw/dt = 2 h_c w from the left end of the sampling region.
  auto system = [c_family](const State& x, State& dxdt, double t) {
    dxdt[0] = 2.0 * closed_form_h(c_family, t).value * x[0];
  };
  State x{w(region.lo)};
  double worst = 0.0;
  auto observer = [&](const State& s, double t) {
    const double exact = w(t);
    worst = std::max(worst, std::abs(s[0] - exact) / std::abs(exact));
  };
  odeint::integrate_adaptive(odeint::make_controlled(1e-14 * std::abs(x[0]), 1e-12,
                                                     region.width() / 64.0,
                                                     odeint::runge_kutta_dopri5<State>()),
                             system, x, region.lo, region.hi, region.width() / 1024.0, observer);
  w.ode_relative_error = worst;
  if (!(worst < 1e-8)) {
    throw SingularError("solve_w: numerical w deviates from the closed form by " + fmt(worst));
  }
  return w;
}

GeneratedMetric generate_metric(double c_family, double K, double c0, const Interval& domain, double eps) {
  if (!(K > 0.0)) throw DomainError("generate_metric requires K > 0 (w = K t^2 (1-ct)^2 must be positive)");
  if (!(c0 > 0.0)) throw DomainError("generate_metric requires c0 > 0");
  GeneratedMetric gm;
  gm.c_family = c_family;
  gm.K = K;
  gm.c0 = c0;
  gm.w_eval = solve_w(c_family, K, domain, eps);

  using detail::operator*;
  const double scale = 1.0 / (c0 * K);
  auto p_jet = [c_family](double t) {
    const double p = t * (1.0 - c_family * t);
    const double sign = p < 0.0 ? -1.0 : 1.0;  // |p|
    return Jet{sign * p, sign * (1.0 - 2.0 * c_family * t), sign * (-2.0 * c_family)};
  };

  MetricProfile m;
  m.domain = domain;
  m.region = domain.shrunk(eps);
  m.a = Warp([=](double t) { return scale * detail::pow(p_jet(t), -2.0); });
  m.b = Warp([=](double t) { return scale * detail::pow(p_jet(t), -1.0); });
  std::ostringstream label;
  label.imbue(std::locale::classic());
  label.precision(17);
  label << "family(c_family=" << c_family << ", K=" << K << ", c0=" << c0 << ")";
  m.label = label.str();

  CatalogEntry& e = gm.entry;
  e.name = "family";
  e.profile = m;
  e.params = {{"c_family", c_family}, {"K", K}, {"c0", c0}};
  e.expected_scalar_curvature = 0.0;
  e.expected_w = [c_family](double t) {
    const double p = t * (1.0 - c_family * t);
    return 4.0 * pi * p * p;
  };
  e.domain_text = domain.str();
  e.notes = "A = 1/(c0 w), B = 1/(c0 sqrt(K w)), w = K t^2 (1 - c t)^2; G = t harmonic";
  return gm;
}

ScalarFlatReport scalar_flat_validate(const GeneratedMetric& gm, int npoints, double closed_tol,
                                      double oracle_tol) {
  ScalarFlatReport rep;
  rep.npoints = npoints;
  rep.closed_tolerance = closed_tol;
  rep.oracle_tolerance = oracle_tol;
  const MetricProfile& m = gm.entry.profile;
  for (double t : interior_points(m.region.lo, m.region.hi, npoints)) {
    const double closed = std::abs(curvature_at(m, t).sc);
    if (closed > rep.max_sc_closed || !std::isfinite(closed)) {
      rep.max_sc_closed = closed;
      rep.worst_t_closed = t;
    }
    const double oracle = std::abs(curvature_oracle(m, t).sc);
    if (oracle > rep.max_sc_oracle || !std::isfinite(oracle)) {
      rep.max_sc_oracle = oracle;
      rep.worst_t_oracle = t;
    }
  }
  rep.pass = rep.max_sc_closed < rep.closed_tolerance && rep.max_sc_oracle < rep.oracle_tolerance;
  return rep;
}

std::vector<Interval> pole_free_intervals(double c) {
  if (c <= 0.0) return {{0.1, 3.0}};
  const double pole = 1.0 / c;
  return {{0.1 * pole, 0.9 * pole}, {1.1 * pole, 3.0 * pole}};
}

std::vector<IdentityResidual> family_residuals(double c, int count, const Tolerances& tol) {
  std::vector<IdentityResidual> out;
  const FHPair pair = closed_form_pair(c);
  for (const Interval& iv : pole_free_intervals(c)) {
    for (double r : linspace(iv.lo, iv.hi, count)) {
      const Jet h = pair.h(r);
      out.push_back(make_residual("riccati", r, r * r * h.d1 + r * r * h.value * h.value + 2.0,
                                  2.0 * r * h.value, tol.get("riccati")));
      const Jet f = pair.f(r);
      out.push_back(make_residual("fh", r, f.d2 + 3.0 * f.value * h.value * h.value,
                                  -3.0 * (f.d1 * h.value + f.value * h.d1), tol.get("fh")));
    }
    const double mid = 0.5 * (iv.lo + iv.hi);
    const std::array<std::pair<double, double>, 3> runs{{{iv.lo, iv.hi}, {mid, iv.lo}, {iv.hi, mid}}};
    for (const auto& [r0, r1] : runs) {
      const RiccatiSolution sol = integrate_riccati(r0, closed_form_h(c, r0).value, r1);
      const double err = sol.closed_form_error.value_or(std::numeric_limits<double>::infinity());
      IdentityResidual res = make_residual("ode_match", r0, err, 0.0, tol.get("ode_match"));
      if (!sol.reached_end()) res.pass = false;
      out.push_back(res);
    }
  }
  return out;
}

}  // namespace warpcheck
