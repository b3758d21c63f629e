#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "warpcheck/errors.hpp"
#include "warpcheck/levelset.hpp"
#include "warpcheck/registry.hpp"

using namespace warpcheck;
using oracle::pi;

namespace {

// Monotone quantities written out directly from w.
double m_plus(double t, double w) { return std::pow(1.0 - t, -3.0) / t * w - 4.0 * pi / (1.0 - t); }
double m_minus(double t, double w) { return std::pow(1.0 + t, -3.0) / t * w + 4.0 * pi / (1.0 + t); }

void expect_constant(const MonotoneSeries& s, double value, double tol) {
  ASSERT_TRUE(s.constant_value.has_value());
  EXPECT_NEAR(*s.constant_value, value, tol);
  for (double v : s.values) EXPECT_NEAR(v, value, tol);
}

}  // namespace

TEST(LevelReport, CatalogValues) {
  const LevelSetReport r1 = level_report(canonical_harmonic(thm1_metric(1.0)), 0.5);
  EXPECT_NEAR(r1.w, pi / 4.0, 1e-14);
  EXPECT_NEAR(r1.area, 64.0 * pi, 1e-12);
  EXPECT_NEAR(r1.H, 0.0, 1e-14);
  const LevelSetReport r3 = level_report(canonical_harmonic(thm3_metric(1.0)), -2.0);
  EXPECT_NEAR(r3.w, 16.0 * pi, 1e-12);
  EXPECT_NEAR(r3.x, -2.0, 1e-14);
}

TEST(LevelReport, GaussBonnetOnEveryCatalogMetric) {
  for (const auto& info : catalog_listing()) {
    const RadialHarmonic h = canonical_harmonic(make_entry(info.name));
    const auto [lo, hi] = h.level_range();
    for (double f : {0.1, 0.5, 0.9}) {
      const LevelSetReport r = level_report(h, lo + f * (hi - lo));
      EXPECT_NEAR(r.gauss_bonnet, 8.0 * pi, 1e-9 * 8.0 * pi) << info.name;
      EXPECT_NEAR(r.w_prime_integral, r.w_prime_fd, 1e-5 * std::max(1.0, std::abs(r.w_prime_integral))) << info.name;
    }
  }
}

TEST(LevelReport, UnattainedLevel) {
  const RadialHarmonic h = canonical_harmonic(thm1_metric(1.0));
  EXPECT_THROW((void)level_report(h, 1.5), SingularError);
}

TEST(MonotonePlus, Thm1ConstantForEveryC) {
  for (double c : {0.5, 1.0, 2.0}) {
    const RadialHarmonic h = canonical_harmonic(thm1_metric(c));
    const MonotoneSeries s = monotone_plus(h, default_grid_plus());
    ASSERT_EQ(s.values.size(), 512u);
    expect_constant(s, -4.0 * pi, 1e-7);
    EXPECT_LE(s.max_derivative, 1e-6);
    EXPECT_TRUE(monotonicity_verdict(s, 1e-6).pass);
  }
}

TEST(MonotonePlus, DirectEvaluationOracle) {
  const RadialHarmonic h = canonical_harmonic(thm1_metric(1.0));
  const MonotoneSeries s = monotone_plus(h, {0.05, 0.95, 50});
  for (std::size_t i = 0; i < s.ts.size(); ++i)
    EXPECT_NEAR(s.values[i], m_plus(s.ts[i], oracle::w_thm1(s.ts[i])), 1e-9);
}

TEST(MonotonePlus, SchwarzschildInBothCharts) {
  const RadialHarmonic direct = canonical_harmonic(schwarzschild(1.0));
  expect_constant(monotone_plus(direct, default_grid_plus(1e-3, 128)), -4.0 * pi, 1e-7);

  const CatalogEntry pulled =
      reparametrize(schwarzschild(1.0), schwarzschild_to_level_chart(1.0), {0.0, 1.0, true, true});
  const auto coord = coordinate_harmonic(pulled.profile);
  ASSERT_TRUE(coord.harmonic);
  expect_constant(monotone_plus(*coord.harmonic, default_grid_plus(1e-3, 128)), -4.0 * pi, 1e-7);
}

TEST(MonotoneMinus, Thm3AndRcoord) {
  for (double c : {1.0, 2.0}) {
    const RadialHarmonic h = canonical_harmonic(thm3_metric(c));
    const MonotoneSeries s = monotone_minus(h, default_grid_minus());
    expect_constant(s, 4.0 * pi, 1e-7 * (1.0 + 4.0 * pi));
    EXPECT_TRUE(monotonicity_verdict(s, 1e-6).pass) << c;
  }
  const MonotoneSeries r = monotone_minus(canonical_harmonic(thm3_rcoord(1.0)), default_grid_minus());
  expect_constant(r, 4.0 * pi, 1e-7 * (1.0 + 4.0 * pi));
}

TEST(MonotoneMinus, DirectEvaluationOracle) {
  const RadialHarmonic h = canonical_harmonic(thm3_metric(1.0));
  const MonotoneSeries s = monotone_minus(h, {-40.0, -1.1, 50});
  for (std::size_t i = 0; i < s.ts.size(); ++i)
    EXPECT_NEAR(s.values[i], m_minus(s.ts[i], oracle::w_thm3(s.ts[i])), 1e-8 * (1.0 + std::abs(s.values[i])));
  EXPECT_NEAR(m_minus(-2.0, 16.0 * pi), 4.0 * pi, 1e-13);
}

TEST(MonotoneMw, EuclideanIsZero) {
  const RadialHarmonic h = canonical_harmonic(euclidean());
  const MonotoneSeries s = monotone_mw(h, default_grid_mw(h));
  expect_constant(s, 0.0, 1e-7 * (1.0 + 4.0 * pi * 50.0));
  EXPECT_LE(s.max_derivative, 1e-6);
  EXPECT_DOUBLE_EQ(monotone_value(Quantity::mw, 1.0, 7.0), 7.0 - 4.0 * pi);
}

TEST(MonotonicityVerdict, PerturbedSeriesFails) {
  MonotoneSeries s = monotone_plus(canonical_harmonic(thm1_metric(1.0)), default_grid_plus(1e-3, 64));
  s.derivative_estimates[17] = 1.0;
  const MonotonicityVerdict v = monotonicity_verdict(s, 1e-6);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.worst_index, 17u);
  EXPECT_DOUBLE_EQ(v.worst_t, s.ts[17]);
  EXPECT_DOUBLE_EQ(v.worst_derivative, 1.0);
}

TEST(MonotonicityVerdict, StrictlyDecreasingSeriesPasses) {
  std::vector<double> ts = linspace(0.1, 0.9, 20), vs;
  for (double t : ts) vs.push_back(-t * t);
  const MonotoneSeries s = make_series(Quantity::plus, ts, vs);
  EXPECT_TRUE(monotonicity_verdict(s, 0.0).pass);
  EXPECT_FALSE(s.constant_value.has_value());
}

TEST(MonotoneSeries, DomainMismatchRejected) {
  const RadialHarmonic h1 = canonical_harmonic(thm1_metric(1.0));
  EXPECT_THROW(monotone_minus(h1, default_grid_minus()), DomainError);
  EXPECT_THROW(monotone_plus(h1, {0.5, 1.5, 16}), DomainError);
  EXPECT_THROW(monotone_plus(h1, {-0.1, 0.5, 16}), DomainError);
  const RadialHarmonic h3 = canonical_harmonic(thm3_metric(1.0));
  EXPECT_THROW(monotone_plus(h3, default_grid_plus()), DomainError);
  // Inside the quantity's domain but not attained by G.
  EXPECT_THROW(monotone_mw(h1, {2.0, 3.0, 16}), DomainError);
}

TEST(RigidityChart, EnergyAndGradientRelations) {
  for (double c : {0.5, 1.0, 2.0}) {
    const RadialHarmonic h = canonical_harmonic(thm1_metric(c));
    double ratio0 = 0.0;
    for (double t : linspace(0.05, 0.95, 19)) {
      const LevelSetReport r = level_report(h, t);
      const double h1 = (1.0 - 2.0 * t) / (t * (1.0 - t));
      EXPECT_NEAR(r.w_prime_integral / r.w, 2.0 * h1, 1e-6 * std::max(1.0, std::abs(2.0 * h1)));
      // d|grad G|/dt along the level parameter, by differences.
      auto gn = [&](double s) { return level_report(h, s).grad_norm; };
      const double dgn = oracle::d1(gn, t, 1e-4);
      EXPECT_NEAR(dgn / r.grad_norm, r.w_prime_integral / r.w, 1e-6 * std::max(1.0, std::abs(2.0 * h1)));
      const double ratio = r.grad_norm / r.w;
      if (ratio0 == 0.0) ratio0 = ratio;
      EXPECT_NEAR(ratio / ratio0, 1.0, 1e-10);
    }
  }
}

TEST(Grids, LogSpacingTowardsAnchor) {
  const std::vector<double> g = grid_points(default_grid_minus(-50.0, 1e-3, 64));
  ASSERT_EQ(g.size(), 64u);
  EXPECT_DOUBLE_EQ(g.front(), -50.0);
  EXPECT_DOUBLE_EQ(g.back(), -1.001);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_GT(g[i], g[i - 1]);
    if (i + 1 < g.size()) {
      // Distances to -1 shrink by a constant factor.
      const double q0 = (-1.0 - g[i - 1]) / (-1.0 - g[i]);
      const double q1 = (-1.0 - g[i]) / (-1.0 - g[i + 1]);
      EXPECT_NEAR(q0, q1, 1e-9);
    }
  }
  EXPECT_THROW(grid_points({-2.0, 0.0, 10, Spacing::log_to_anchor, -1.0}), DomainError);
  EXPECT_THROW(grid_points({0.0, 1.0, 2}), DomainError);
  EXPECT_THROW(grid_points({1.0, 0.0, 10}), DomainError);
}

TEST(Grids, DerivativesExactOnQuadratics) {
  const std::vector<double> ts{0.0, 0.1, 0.35, 0.4, 0.9, 1.0, 1.7};
  std::vector<double> vs;
  for (double t : ts) vs.push_back(3.0 * t * t - 2.0 * t + 0.5);
  const std::vector<double> d = grid_derivatives(ts, vs);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_NEAR(d[i], 6.0 * ts[i] - 2.0, 1e-12) << i;
}

TEST(Quantities, NamesAndDomains) {
  for (Quantity q : {Quantity::plus, Quantity::minus, Quantity::mw}) EXPECT_EQ(parse_quantity(quantity_name(q)), q);
  EXPECT_FALSE(parse_quantity("PLUS"));
  EXPECT_TRUE(in_quantity_domain(Quantity::plus, 0.5));
  EXPECT_FALSE(in_quantity_domain(Quantity::plus, 1.0));
  EXPECT_TRUE(in_quantity_domain(Quantity::minus, -1.5));
  EXPECT_FALSE(in_quantity_domain(Quantity::minus, -1.0));
  EXPECT_FALSE(in_quantity_domain(Quantity::mw, 0.0));
}

TEST(MonotoneSeries, BitwiseDeterministic) {
  const RadialHarmonic h = canonical_harmonic(thm3_rcoord(1.0));
  const MonotoneSeries a = monotone_minus(h, default_grid_minus());
  const MonotoneSeries b = monotone_minus(h, default_grid_minus());
  ASSERT_EQ(a.values.size(), b.values.size());
  EXPECT_EQ(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)), 0);
  EXPECT_EQ(std::memcmp(a.derivative_estimates.data(), b.derivative_estimates.data(),
                        a.derivative_estimates.size() * sizeof(double)),
            0);
}
