#include "warpcheck/registry.hpp"

#include <cmath>
#include <numbers>

#include "warpcheck/errors.hpp"
#include "warpcheck/odes.hpp"

namespace warpcheck {

namespace {

const CatalogInfo& info_for(const std::string& name) {
  for (const auto& info : catalog_listing()) {
    if (info.name == name) return info;
  }
  std::string known;
  for (const auto& info : catalog_listing()) known += (known.empty() ? "" : ", ") + info.name;
  throw DomainError("unknown metric '" + name + "' (known: " + known + ")");
}

// Defaults filled in; unknown keys rejected.
ParamMap resolve(const CatalogInfo& info, const ParamMap& given) {
  ParamMap out;
  for (const auto& p : info.params) out[p.name] = p.default_value;
  for (const auto& [k, v] : given) {
    if (!out.count(k)) throw DomainError("metric '" + info.name + "' has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw DomainError("parameter '" + k + "' must be finite");
    out[k] = v;
  }
  return out;
}

double positive(const ParamMap& p, const std::string& key, const std::string& metric) {
  const double v = p.at(key);
  if (!(v > 0.0)) throw DomainError("metric '" + metric + "' requires " + key + " > 0");
  return v;
}

}  // namespace

const std::vector<CatalogInfo>& catalog_listing() {
  static const std::vector<CatalogInfo> listing = {
      {"euclidean", {}, "(0,inf)", "flat R^3, d rho^2 + rho^2 g_S2"},
      {"schwarzschild", {{"c", "c>0", 1.0}}, "(0,inf)", "(1 + c/r)^4 g_R3 in the conformal chart"},
      {"thm1", {{"c", "c>0", 1.0}}, "(0,1)", "c^2/(t^4(1-t)^4) dt^2 + c^2/(t^2(1-t)^2) g_S2"},
      {"thm3",
       {{"c", "c>0", 1.0}, {"t_lo", "t_lo<-1", -50.0}},
       "(-inf,-1)",
       "c/(t^4(1+t)^4) dt^2 + c/(t^2(1+t)^2) g_S2, sampled on [t_lo, -1)"},
      {"thm3-rcoord",
       {{"c", "c>0", 1.0}, {"t_lo", "t_lo<-1", -50.0}},
       "(0,inf)",
       "thm3 in r = t(1+t): c r^-4 (1+4r)^-1 [dr^2 + r^2 (1+4r) g_S2]"},
      {"family",
       {{"c_family", "real", 1.0},
        {"K", "K>0", 4.0 * std::numbers::pi},
        {"c0", "c0>0", 1.0 / (4.0 * std::numbers::pi)},
        {"T", "T>0, used when c_family<=0", 1.0}},
       "(0,1/c_family) or (0,T]",
       "1/(c0 w)^2 dt^2 + 1/(c0^2 K w) g_S2 with w = K t^2 (1 - c_family t)^2"},
      {"cylinder", {}, "(-inf,inf)", "round cylinder dt^2 + g_S2 (Sc = 2), negative control"},
  };
  return listing;
}

CatalogEntry make_entry(const std::string& name, const ParamMap& params, double eps) {
  const CatalogInfo& info = info_for(name);
  const ParamMap p = resolve(info, params);
  if (name == "euclidean") return euclidean(eps);
  if (name == "schwarzschild") return schwarzschild(positive(p, "c", name), eps);
  if (name == "thm1") return thm1_metric(positive(p, "c", name), eps);
  if (name == "thm3") return thm3_metric(positive(p, "c", name), p.at("t_lo"), eps);
  if (name == "thm3-rcoord") return thm3_rcoord(positive(p, "c", name), p.at("t_lo"), eps);
  if (name == "family") {
    const double c = p.at("c_family");
    const double T = positive(p, "T", name);
    return generate_metric(c, positive(p, "K", name), positive(p, "c0", name), default_family_domain(c, T), eps)
        .entry;
  }
  return cylinder();
}

}  // namespace warpcheck
