#pragma once

// Pointwise and integral checks of the level-set identities and inequalities
// for radial harmonics. Every `t`, `T` is a level value of G.

#include <cstdint>
#include <string>
#include <vector>

#include "warpcheck/harmonic.hpp"
#include "warpcheck/tolerances.hpp"

namespace warpcheck {

enum class Relation { equal, greater_equal, less_equal };

std::string relation_symbol(Relation r);

/// residual = lhs - rhs. With scale = max(1, |lhs|, |rhs|):
///   equal          pass iff |residual| <= tolerance * scale
///   greater_equal  pass iff residual >= -tolerance * scale
///   less_equal     pass iff residual <=  tolerance * scale
struct IdentityResidual {
  std::string name;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::equal;
  bool pass = false;

  /// |residual| / max(1, |lhs|, |rhs|).
  [[nodiscard]] double relative_gap() const;
};

IdentityResidual make_residual(std::string name, double t, double lhs, double rhs, double tolerance,
                               Relation relation = Relation::equal);

/// Ric(e1,e1) = Sc/2 - Sc_l/2 + (|grad|grad G||^2 - |Hess G|^2/2) / |grad G|^2.
IdentityResidual lemma21_residual(const RadialHarmonic& h, double t, double tol = 1e-8);

/// |Hess G|^2 >= 3/2 |grad|grad G||^2. The residual is the equality gap.
IdentityResidual lemma24_check(const RadialHarmonic& h, double t, double tol = 1e-9);

/// Laplacian of |grad G| by direct differentiation against
/// (|Hess G|^2 - |grad|grad G||^2)/|grad G| + Ric(e1,e1) |grad G|.
IdentityResidual bochner_residual(const RadialHarmonic& h, double t, double tol = 1e-7);

/// |G_11| = |grad|grad G||, exact in the radial frame.
IdentityResidual g11_identity(const RadialHarmonic& h, double t, double tol = 1e-12);

/// G_11 + 2 G_22 = 0.
IdentityResidual trace_free_residual(const RadialHarmonic& h, double t, double tol = 1e-12);

/// int_l |grad G|^-1 Lap|grad G|  >=  3/4 int_l |grad|grad G||^2 |grad G|^-2 - 4 pi.
/// For radial harmonics lhs - rhs = 2 pi B^2 Sc exactly, so the inequality
/// holds on levels where Sc >= 0.
IdentityResidual eqn_scalar_check(const RadialHarmonic& h, double t, double tol = 1e-7);

/// (w')^2 <= (int_l |grad|grad G||^2 |grad G|^-2) w.
IdentityResidual cauchy_schwarz_gap(const RadialHarmonic& h, double t, double tol = 1e-8);

/// h_c(t) = (1 - 2ct) / (t (1 - ct)); throws DomainError within 1e-2 of a pole.
double h_family(double c, double t);

/// w (w'/w - 2 h_c)^2 >= 0, zero when dw/dt = 2 h_c w.
IdentityResidual eqn_h_gap(const RadialHarmonic& h, double t, double c, double tol = 1e-10);

/// int_{l} Sc_{l} = 8 pi for round level spheres.
IdentityResidual gauss_bonnet_check(const RadialHarmonic& h, double t, double tol = 1e-9);

/// D^2 G = -2 (DB/B) DG.
IdentityResidual harmonicity_check(const RadialHarmonic& h, double t, double tol = 1e-8);

/// Surface-integral w' against central differences of w.
IdentityResidual w_prime_check(const RadialHarmonic& h, double t, double tol = 1e-5);

/// Structure forced in the equality case: grad|grad G| = lambda grad G,
/// G_11 = lambda |grad G|, G_aa = -lambda |grad G| / 2, (A_t)_aa = -lambda/2,
/// H = -lambda, and |grad G| = prop_const * w.
struct RigidityStructure {
  double t = 0.0;
  double lambda = 0.0;  ///< d|grad G|/dt along the flow grad G / |grad G|^2
  double grad_norm = 0.0;
  double w = 0.0;
  double w_prime = 0.0;
  double G11 = 0.0;
  double Gaa = 0.0;
  double A22 = 0.0;
  double H = 0.0;
  double prop_const = 0.0;  ///< |grad G| / w
};

RigidityStructure rigidity_structure(const RadialHarmonic& h, double t);

/// Table relations at each level plus constancy of prop_const across the
/// levels and lambda = prop_const * w'.
std::vector<IdentityResidual> rigidity_residuals(const RadialHarmonic& h, const std::vector<double>& levels,
                                                 double tol = 1e-8);

/// B^2 w at t against its value at t_ref: the integrated form of
/// d g_t / dt = -(w'/w) g_t.
IdentityResidual metric_reconstruction_check(const RadialHarmonic& h, double t, double t_ref,
                                             double tol = 1e-7);

/// In the level chart the radial metric factor is 1/|grad G|.
IdentityResidual level_chart_check(const RadialHarmonic& h, double t, double tol = 1e-8);

/// int_{L(t,T)} (f(G) Lap|grad G| - |grad G| Lap f(G)) by co-area quadrature
/// against the boundary terms on l(T) and l(t), with f(G) = G^-2.
IdentityResidual greens_identity_check(const RadialHarmonic& h, double t, double T, double tol = 1e-6);

/// Closed-form flatness as 4 K_rad = -2 K_tan at coordinate x.
IdentityResidual flatness_check(const MetricProfile& m, double x, double tol = 1e-9);

/// Same relation evaluated with the finite-difference curvature oracle.
IdentityResidual oracle_flatness_check(const MetricProfile& m, double x, double tol = 1e-6);

/// Every identity and inequality above (except flatness) on each level;
/// Green's identity on consecutive pairs of levels.
std::vector<IdentityResidual> identity_suite(const RadialHarmonic& h, const std::vector<double>& levels,
                                             const Tolerances& tol = {});

/// What `verify` runs: closed-form and oracle flatness at the coordinates of
/// the levels, then identity_suite, on `count` interior levels of the
/// entry's canonical harmonic.
std::vector<IdentityResidual> verification_suite(const CatalogEntry& entry, int count,
                                                 const Tolerances& tol = {});

/// identity_suite plus the equality-case structure: rigidity table, level
/// chart and metric reconstruction.
std::vector<IdentityResidual> rigidity_suite(const CatalogEntry& entry, int count, const Tolerances& tol = {});

/// `count` interior level values of h's sampling region.
std::vector<double> suite_levels(const RadialHarmonic& h, int count);

/// Fixed-seed draws of perturbed_euclidean with |a|, |b| <= 0.1.
std::vector<CatalogEntry> random_perturbed_profiles(std::uint64_t seed, int count);

/// Fixed-seed draws of superharmonic_conformal (Sc > 0 everywhere).
std::vector<CatalogEntry> random_conformal_profiles(std::uint64_t seed, int count);

}  // namespace warpcheck
