#pragma once

// Deterministic machine-readable output. JSON documents are produced with a
// stable key order; CSV numbers use 17 significant digits. Nothing here
// depends on the global locale.

#include <optional>
#include <string>
#include <vector>

#include "warpcheck/identities.hpp"
#include "warpcheck/levelset.hpp"
#include "warpcheck/odes.hpp"
#include "warpcheck/registry.hpp"

namespace warpcheck {

/// Library version string.
std::string tool_version();

/// 17 significant digits, decimal point, "nan"/"inf"/"-inf" for non-finite.
std::string format_real(double v);

/// Locale-independent parse of a whole string; empty on failure.
std::optional<double> parse_real(const std::string& text);

struct VerifyReport {
  std::string command;
  std::string metric;
  ParamMap params;
  std::vector<IdentityResidual> suite;
  std::optional<MonotoneSeries> series;
  std::optional<MonotonicityVerdict> series_verdict;
  bool pass = false;
};

/// {tool_version, command, metric, params, suite, series?, verdict}.
std::string to_json(const VerifyReport& r);

/// {quantity, metric, params, grid, values, derivative_estimates, verdict}.
std::string series_json(const std::string& metric, const ParamMap& params, const GridSpec& grid,
                        const MonotoneSeries& s, const MonotonicityVerdict& v);

/// Header "t,M,dM_dt" and one row per grid point.
std::string series_csv(const MonotoneSeries& s);

std::string catalog_json(const std::vector<CatalogInfo>& listing);

std::string generate_json(const GeneratedMetric& gm, const std::optional<ScalarFlatReport>& validation,
                          bool pass);

/// Residual list ("suite" entries) as CSV: name,t,lhs,rhs,residual,tolerance,relation,pass.
std::string suite_csv(const std::vector<IdentityResidual>& suite);

}  // namespace warpcheck
