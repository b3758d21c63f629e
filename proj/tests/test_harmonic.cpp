#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "warpcheck/errors.hpp"
#include "warpcheck/harmonic.hpp"
#include "warpcheck/registry.hpp"

using namespace warpcheck;
using oracle::pi;

namespace {

// Laplacian of a radial function f(t) on A^2 dt^2 + B^2 g_S2:
// (A B^2)^-1 d/dt (B^2 A^-1 f'), by nested central differences.
double radial_laplacian(const MetricProfile& m, const std::function<double(double)>& f, double t, double h) {
  auto flux = [&](double s) {
    const double b = m.b.value(s);
    return b * b / m.a.value(s) * oracle::d1(f, s, h);
  };
  const double b = m.b.value(t);
  return oracle::d1(flux, t, h) / (m.a.value(t) * b * b);
}

}  // namespace

TEST(SolveRadialHarmonic, Thm1RecoversCoordinate) {
  const MetricProfile m = thm1_metric(1.0).profile;
  const RadialHarmonic h = solve_radial_harmonic(m, 0.01, 0.01, 0.99, 0.99);
  EXPECT_EQ(h.kind(), HarmonicKind::quadrature);
  EXPECT_DOUBLE_EQ(h.value(0.01), 0.01);
  EXPECT_NEAR(h.value(0.99), 0.99, 1e-14);
  for (double t : linspace(0.01, 0.99, 50)) EXPECT_NEAR(h.value(t), t, 1e-9) << t;
}

TEST(SolveRadialHarmonic, EuclideanIsAffineInInverseRadius) {
  const MetricProfile m = euclidean().profile;
  const RadialHarmonic h = solve_radial_harmonic(m, 0.5, 2.0, 4.0, 0.25);
  for (double r : linspace(0.5, 4.0, 36)) EXPECT_NEAR(h.value(r), 1.0 / r, 1e-8) << r;
  for (double r : {0.7, 1.9, 3.3}) {
    EXPECT_NEAR(h.jet(r).d1, -1.0 / (r * r), 1e-8);
    EXPECT_NEAR(h.jet(r).d2, 2.0 / (r * r * r), 1e-7);
  }
  EXPECT_NEAR(first_integral(h, 1.0), -1.0, 1e-8);
}

TEST(SolveRadialHarmonic, RejectsBadBoundaryData) {
  const MetricProfile m = thm1_metric(1.0).profile;
  EXPECT_THROW(solve_radial_harmonic(m, 0.2, 1.0, 0.8, 1.0), DomainError);
  EXPECT_THROW(solve_radial_harmonic(m, 0.8, 0.0, 0.2, 1.0), DomainError);
  EXPECT_THROW(solve_radial_harmonic(m, 0.0, 0.0, 0.5, 1.0), DomainError);
  EXPECT_THROW(solve_radial_harmonic(m, 0.5, 0.0, 1.5, 1.0), DomainError);
}

TEST(CoordinateHarmonic, AcceptsAndRejects) {
  for (double c : {0.5, 1.0, 3.0}) {
    const auto r1 = coordinate_harmonic(thm1_metric(c).profile);
    ASSERT_TRUE(r1.harmonic);
    // (B^2/A) * 1 = c.
    EXPECT_NEAR(r1.harmonic->flux(), c, 1e-12 * c);
    EXPECT_TRUE(coordinate_harmonic(thm3_metric(c).profile).harmonic);
  }
  const auto e = coordinate_harmonic(euclidean().profile);
  EXPECT_FALSE(e.harmonic);
  EXPECT_GT(e.variation, 1.0);
  EXPECT_FALSE(coordinate_harmonic(schwarzschild(1.0).profile).harmonic);
}

TEST(HessianData, Thm1Midpoint) {
  const RadialHarmonic h = canonical_harmonic(thm1_metric(1.0));
  const HessianData d = hessian_data(h, 0.5);
  EXPECT_NEAR(d.grad_norm, 1.0 / 16.0, 1e-15);
  EXPECT_NEAR(d.u11, 0.0, 1e-15);
  EXPECT_NEAR(d.u_aa, 0.0, 1e-15);
  // Away from the neck: |grad G| = p^2 with p = t(1-t), so
  // u11 = D|grad G| = p^2 (2 p p') and the lambda of the equality case is
  // u11/|grad G| = 2 p p'.
  for (double t : {0.2, 0.35, 0.8}) {
    const double p = t * (1.0 - t), dp = 1.0 - 2.0 * t;
    const HessianData q = hessian_data(h, t);
    EXPECT_NEAR(q.grad_norm, p * p, 1e-15);
    EXPECT_NEAR(q.u11, 2.0 * p * p * p * dp, 1e-15);
    EXPECT_NEAR(q.H, -2.0 * p * dp, 1e-14);
    EXPECT_NEAR(q.hess_sq, 1.5 * q.grad_grad_norm_sq, 1e-9 * std::max(1.0, q.hess_sq));
  }
}

TEST(HessianData, LaplacianOfGradientNormMatchesDifferences) {
  for (const auto& info : catalog_listing()) {
    if (info.name == "thm3" || info.name == "thm3-rcoord" || info.name == "cylinder") continue;
    const CatalogEntry e = make_entry(info.name);
    const RadialHarmonic h = canonical_harmonic(e);
    const MetricProfile& m = e.profile;
    auto gn = [&](double s) { return std::abs(h.jet(s).d1) / m.a.value(s); };
    for (double t : interior_points(m.region.lo + 0.05 * m.region.width(), m.region.hi - 0.05 * m.region.width(), 9)) {
      const double step = 1e-3 * std::min(std::max(1.0, std::abs(t)), m.domain.distance_to_open_end(t));
      const double fd = radial_laplacian(m, gn, t, step);
      const double lap = hessian_data(h, t).lap_grad_norm;
      EXPECT_NEAR(lap, fd, 1e-6 * std::max(1.0, std::abs(lap))) << info.name << " t=" << t;
    }
  }
}

TEST(HessianData, TraceFreeAndHarmonic) {
  for (const CatalogEntry& e : {thm1_metric(2.0), schwarzschild(0.7), thm3_metric(1.0), thm3_rcoord(1.0),
                                superharmonic_conformal(0.3, 0.05)}) {
    const RadialHarmonic h = canonical_harmonic(e);
    for (double t : interior_points(e.profile.region.lo, e.profile.region.hi, 20)) {
      const HessianData d = hessian_data(h, t);
      const double s = std::max(std::abs(d.u11), 1e-300);
      EXPECT_NEAR(d.u11 + 2.0 * d.u_aa, 0.0, 1e-12 * s + 1e-12) << e.name;
      EXPECT_NEAR(d.H, -d.u11 / d.grad_norm, 1e-12 * std::abs(d.H) + 1e-300);
      const double hr = harmonicity_residual(h, t);
      const double scale = std::max(1.0, std::abs(d.u11));
      EXPECT_NEAR(hr, 0.0, 1e-8 * scale) << e.name << " t=" << t;
    }
  }
}

TEST(HessianData, CriticalLevelRejected) {
  MetricProfile m = cylinder().profile;
  const RadialHarmonic h = RadialHarmonic::from_formula(
      m, HarmonicFormula{[](double t) { return Jet3{(t - 3.0) * (t - 3.0), 2.0 * (t - 3.0), 2.0, 0.0}; }, "bad"});
  EXPECT_THROW((void)hessian_data(h, 3.0), SingularError);
}

TEST(FirstIntegral, ConstantAcrossRegion) {
  for (const auto& info : catalog_listing()) {
    const RadialHarmonic h = canonical_harmonic(make_entry(info.name));
    EXPECT_LT(first_integral_variation(h), 1e-8) << info.name;
  }
  const RadialHarmonic q = canonical_harmonic(superharmonic_conformal(0.5, 0.02));
  EXPECT_EQ(q.kind(), HarmonicKind::quadrature);
  EXPECT_LT(first_integral_variation(q), 1e-8);
}

TEST(HarmonicFunction, MonotoneAlongRegion) {
  for (const auto& info : catalog_listing()) {
    const CatalogEntry e = make_entry(info.name);
    const RadialHarmonic h = canonical_harmonic(e);
    const auto pts = linspace(e.profile.region.lo, e.profile.region.hi, 200);
    for (std::size_t i = 1; i < pts.size(); ++i)
      EXPECT_GT(h.orientation() * (h.value(pts[i]) - h.value(pts[i - 1])), 0.0) << info.name;
    const auto [lo, hi] = h.level_range();
    EXPECT_LT(lo, hi);
    for (double level : {lo + 0.3 * (hi - lo), lo + 0.9 * (hi - lo)})
      EXPECT_NEAR(h.value(h.coordinate_of_level(level)), level, 1e-10 * std::max(1.0, std::abs(level)));
  }
}

TEST(HarmonicFunction, RcoordFormulaMatchesThm3Level) {
  // G(r) = -1/2 - 1/2 sqrt(1 + 4r) inverts r = t(1+t) on t < -1.
  const RadialHarmonic h = canonical_harmonic(thm3_rcoord(1.0));
  for (double t : {-1.5, -2.0, -10.0}) EXPECT_NEAR(h.value(t * (1.0 + t)), t, 1e-13 * std::abs(t));
  EXPECT_THROW((void)h.coordinate_of_level(-0.5), SingularError);
}

TEST(LevelEnergy, WAndDerivative) {
  const RadialHarmonic h = canonical_harmonic(thm1_metric(1.0));
  EXPECT_NEAR(level_energy(h, 0.5).w, pi / 4.0, 1e-15);
  for (double t : {0.1, 0.3, 0.7}) {
    const double p = t * (1.0 - t);
    EXPECT_NEAR(level_energy(h, t).w, 4.0 * pi * p * p, 1e-14);
    EXPECT_NEAR(level_energy(h, t).w_prime, 8.0 * pi * p * (1.0 - 2.0 * t), 1e-13);
  }
}

TEST(BoundaryLimits, Thm1DecayRates) {
  const RadialHarmonic h = canonical_harmonic(thm1_metric(1.0));
  const LimitReport r = boundary_limit_checks(h, TheoremTag::plus, 1e-3);
  const LimitSequence* at0 = r.find("w/t");
  const LimitSequence* at1 = r.find("w/(1-t)");
  ASSERT_TRUE(at0 && at1);
  EXPECT_LT(at0->values.front(), 0.013);
  EXPECT_NEAR(at0->values.front(), 4.0 * pi * 1e-3 * 0.999 * 0.999, 1e-12);
  EXPECT_LT(at1->values.front(), 0.013);
  EXPECT_NEAR(at0->fitted_order, 1.0, 0.05);
  EXPECT_NEAR(at1->fitted_order, 1.0, 0.05);
  // The integrands of the boundary term are reported, not asserted; they
  // decay like (1-t) and (1-t)^2.
  ASSERT_TRUE(r.find("f(G) dw/dt"));
  EXPECT_NEAR(r.find("f(G) dw/dt")->fitted_order, 1.0, 0.05);
  EXPECT_NEAR(r.find("f'(G) w")->fitted_order, 2.0, 0.05);
}

TEST(BoundaryLimits, Thm3DecayRate) {
  const RadialHarmonic h = canonical_harmonic(thm3_metric(1.0));
  const LimitReport r = boundary_limit_checks(h, TheoremTag::minus, 1e-3);
  const LimitSequence* s = r.find("w/(1+t)");
  ASSERT_TRUE(s);
  EXPECT_LT(std::abs(s->values.front()), 0.013);
  EXPECT_NEAR(s->fitted_order, 1.0, 0.05);
  EXPECT_EQ(r.find("w/t"), nullptr);
}

TEST(BoundaryLimits, FittedSlope) {
  const std::vector<double> x{1.0, 0.5, 0.25, 0.125};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v * v * v);
  EXPECT_NEAR(fitted_log_slope(x, y), 3.0, 1e-12);
}
