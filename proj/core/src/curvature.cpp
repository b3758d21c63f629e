#include "warpcheck/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "warpcheck/errors.hpp"

namespace warpcheck {

namespace {

CurvaturePoint assemble(double t, double k_rad, double k_tan) {
  CurvaturePoint p;
  p.t = t;
  p.k_rad = k_rad;
  p.k_tan = k_tan;
  p.ric_11 = 2.0 * k_rad;
  p.ric_aa = k_rad + k_tan;
  p.sc = 4.0 * k_rad + 2.0 * k_tan;
  return p;
}

[[noreturn]] void invalid_profile(const MetricProfile& m, const char* which, double t, double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "invalid profile " << m.label << ": " << which << "(" << t << ") = " << v << " is not positive";
  throw DomainError(os.str());
}

constexpr int kDim = 3;
using Mat = std::array<std::array<double, kDim>, kDim>;
using Coord = std::array<double, kDim>;

// Coordinate metric at (t, theta, phi). Only warp values are used.
Mat coordinate_metric(const MetricProfile& m, const Coord& x) {
  const double a = m.a.value(x[0]);
  const double b = m.b.value(x[0]);
  const double s = std::sin(x[1]);
  Mat g{};
  g[0][0] = a * a;
  g[1][1] = b * b;
  g[2][2] = b * b * s * s;
  return g;
}

Mat shifted_metric(const MetricProfile& m, Coord x, int k, double dk, int l = -1, double dl = 0.0) {
  x[static_cast<std::size_t>(k)] += dk;
  if (l >= 0) x[static_cast<std::size_t>(l)] += dl;
  return coordinate_metric(m, x);
}

}  // namespace

ArclengthDerivatives arclength_derivatives(const MetricProfile& m, double t) {
  const Jet a = m.A(t);
  if (!(a.value > 0.0)) invalid_profile(m, "A", t, a.value);
  const Jet b = m.B(t);
  return {b.d1 / a.value,
          b.d2 / (a.value * a.value) - b.d1 * a.d1 / (a.value * a.value * a.value)};
}

CurvaturePoint curvature_at(const MetricProfile& m, double t) {
  const ArclengthDerivatives d = arclength_derivatives(m, t);
  const double b = m.b.value(t);
  if (!(b > 0.0)) invalid_profile(m, "B", t, b);
  return assemble(t, -d.d2b / b, (1.0 - d.db * d.db) / (b * b));
}

double default_oracle_step(const MetricProfile& m, double t) {
  const double scale = std::min(std::max(1.0, std::abs(t)), m.domain.distance_to_open_end(t));
  return 1e-3 * scale;
}

CurvaturePoint curvature_oracle(const MetricProfile& m, double t, std::optional<double> step) {
  const double h = step.value_or(default_oracle_step(m, t));
  if (!(h > 0.0) || m.domain.distance_to_open_end(t) < 4.0 * h) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "curvature_oracle: step " << h << " too large at t = " << t << " for domain " << m.domain.str();
    throw DomainError(os.str());
  }
  const Coord x{t, std::numbers::pi / 2.0, 0.0};
  const Coord steps{h, 2e-3, 2e-3};

  // dg[k][i][j] = d_k g_ij, five-point central differences.
  std::array<Mat, kDim> dg{};
  // ddg[k][l][i][j] = d_k d_l g_ij.
  std::array<std::array<Mat, kDim>, kDim> ddg{};
  const Mat g0 = coordinate_metric(m, x);
  for (int k = 0; k < kDim; ++k) {
    const double hk = steps[static_cast<std::size_t>(k)];
    const Mat p1 = shifted_metric(m, x, k, hk);
    const Mat m1 = shifted_metric(m, x, k, -hk);
    const Mat p2 = shifted_metric(m, x, k, 2.0 * hk);
    const Mat m2 = shifted_metric(m, x, k, -2.0 * hk);
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) {
        const auto I = static_cast<std::size_t>(i);
        const auto J = static_cast<std::size_t>(j);
        const auto K = static_cast<std::size_t>(k);
        dg[K][I][J] = (-p2[I][J] + 8.0 * p1[I][J] - 8.0 * m1[I][J] + m2[I][J]) / (12.0 * hk);
        ddg[K][K][I][J] =
            (-p2[I][J] + 16.0 * p1[I][J] - 30.0 * g0[I][J] + 16.0 * m1[I][J] - m2[I][J]) / (12.0 * hk * hk);
      }
    }
    for (int l = k + 1; l < kDim; ++l) {
      const double hl = steps[static_cast<std::size_t>(l)];
      const Mat pp = shifted_metric(m, x, k, hk, l, hl);
      const Mat pm = shifted_metric(m, x, k, hk, l, -hl);
      const Mat mp = shifted_metric(m, x, k, -hk, l, hl);
      const Mat mm = shifted_metric(m, x, k, -hk, l, -hl);
      for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) {
          const double v = (pp[i][j] - pm[i][j] - mp[i][j] + mm[i][j]) / (4.0 * hk * hl);
          ddg[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)][i][j] = v;
          ddg[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)][i][j] = v;
        }
      }
    }
  }

  // Diagonal metric: the inverse is elementwise.
  Mat ginv{};
  for (std::size_t i = 0; i < kDim; ++i) ginv[i][i] = 1.0 / g0[i][i];

  // Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
  std::array<Mat, kDim> gamma{};
  for (std::size_t k = 0; k < kDim; ++k)
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < kDim; ++l) s += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        gamma[k][i][j] = 0.5 * s;
      }

  // R_abcd = 1/2 (g_ad,bc + g_bc,ad - g_bd,ac - g_ac,bd)
  //          + g_ef (Gamma^e_bc Gamma^f_ad - Gamma^e_bd Gamma^f_ac)
  auto riemann = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    double r = 0.5 * (ddg[b][c][a][d] + ddg[a][d][b][c] - ddg[a][c][b][d] - ddg[b][d][a][c]);
    for (std::size_t e = 0; e < kDim; ++e)
      for (std::size_t f = 0; f < kDim; ++f)
        r += g0[e][f] * (gamma[e][b][c] * gamma[f][a][d] - gamma[e][b][d] * gamma[f][a][c]);
    return r;
  };

  Mat ric{};
  for (std::size_t b = 0; b < kDim; ++b)
    for (std::size_t d = 0; d < kDim; ++d) {
      double s = 0.0;
      for (std::size_t a = 0; a < kDim; ++a)
        for (std::size_t c = 0; c < kDim; ++c) s += ginv[a][c] * riemann(a, b, c, d);
      ric[b][d] = s;
    }
  double sc = 0.0;
  for (std::size_t b = 0; b < kDim; ++b)
    for (std::size_t d = 0; d < kDim; ++d) sc += ginv[b][d] * ric[b][d];

  CurvaturePoint p;
  p.t = t;
  p.k_rad = riemann(0, 1, 0, 1) / (g0[0][0] * g0[1][1]);
  p.k_tan = riemann(1, 2, 1, 2) / (g0[1][1] * g0[2][2]);
  p.ric_11 = ric[0][0] / g0[0][0];
  p.ric_aa = ric[1][1] / g0[1][1];
  p.sc = sc;
  return p;
}

}  // namespace warpcheck
