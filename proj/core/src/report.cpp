#include "warpcheck/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace warpcheck {

namespace {

using nlohmann::ordered_json;

// Non-finite values are not JSON numbers; they are written as strings.
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

ordered_json numbers(const std::vector<double>& vs) {
  ordered_json a = ordered_json::array();
  for (double v : vs) a.push_back(number(v));
  return a;
}

ordered_json params_json(const ParamMap& params) {
  ordered_json o = ordered_json::object();
  for (const auto& [k, v] : params) o[k] = number(v);
  return o;
}

ordered_json residual_json(const IdentityResidual& r) {
  ordered_json o;
  o["name"] = r.name;
  o["t"] = number(r.t);
  o["lhs"] = number(r.lhs);
  o["rhs"] = number(r.rhs);
  o["residual"] = number(r.residual);
  o["relative_gap"] = number(r.relative_gap());
  o["tolerance"] = number(r.tolerance);
  o["relation"] = relation_symbol(r.relation);
  o["pass"] = r.pass;
  return o;
}

ordered_json verdict_json(const MonotonicityVerdict& v) {
  ordered_json o;
  o["pass"] = v.pass;
  o["worst_index"] = v.worst_index;
  o["worst_t"] = number(v.worst_t);
  o["worst_derivative"] = number(v.worst_derivative);
  o["tolerance"] = number(v.tolerance);
  return o;
}

ordered_json series_body(const MonotoneSeries& s) {
  ordered_json o;
  o["quantity"] = quantity_name(s.quantity);
  o["t"] = numbers(s.ts);
  o["values"] = numbers(s.values);
  o["derivative_estimates"] = numbers(s.derivative_estimates);
  o["max_derivative"] = number(s.max_derivative);
  o["constant_value"] = s.constant_value ? number(*s.constant_value) : ordered_json(nullptr);
  return o;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string tool_version() { return WARPCHECK_VERSION; }

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_real(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || first == last) return std::nullopt;
  return v;
}

std::string to_json(const VerifyReport& r) {
  ordered_json o;
  o["tool_version"] = tool_version();
  o["command"] = r.command;
  o["metric"] = r.metric;
  o["params"] = params_json(r.params);
  ordered_json suite = ordered_json::array();
  std::size_t failed = 0;
  for (const auto& res : r.suite) {
    suite.push_back(residual_json(res));
    if (!res.pass) ++failed;
  }
  o["suite"] = suite;
  if (r.series) {
    ordered_json s = series_body(*r.series);
    if (r.series_verdict) s["verdict"] = verdict_json(*r.series_verdict);
    o["series"] = s;
  }
  ordered_json verdict;
  verdict["pass"] = r.pass;
  verdict["checks"] = r.suite.size();
  verdict["failed"] = failed;
  o["verdict"] = verdict;
  return dump(o);
}

std::string series_json(const std::string& metric, const ParamMap& params, const GridSpec& grid,
                        const MonotoneSeries& s, const MonotonicityVerdict& v) {
  ordered_json o;
  o["tool_version"] = tool_version();
  o["quantity"] = quantity_name(s.quantity);
  o["metric"] = metric;
  o["params"] = params_json(params);
  ordered_json g;
  g["lo"] = number(grid.lo);
  g["hi"] = number(grid.hi);
  g["count"] = grid.count;
  g["spacing"] = grid.spacing == Spacing::uniform ? "uniform" : "log_to_anchor";
  if (grid.spacing == Spacing::log_to_anchor) g["anchor"] = number(grid.anchor);
  o["grid"] = g;
  o["t"] = numbers(s.ts);
  o["values"] = numbers(s.values);
  o["derivative_estimates"] = numbers(s.derivative_estimates);
  o["constant_value"] = s.constant_value ? number(*s.constant_value) : ordered_json(nullptr);
  o["verdict"] = verdict_json(v);
  return dump(o);
}

std::string series_csv(const MonotoneSeries& s) {
  std::string out = "t,M,dM_dt\n";
  for (std::size_t i = 0; i < s.ts.size(); ++i) {
    out += format_real(s.ts[i]) + "," + format_real(s.values[i]) + "," + format_real(s.derivative_estimates[i]) +
           "\n";
  }
  return out;
}

std::string suite_csv(const std::vector<IdentityResidual>& suite) {
  std::string out = "name,t,lhs,rhs,residual,tolerance,relation,pass\n";
  for (const auto& r : suite) {
    out += r.name + "," + format_real(r.t) + "," + format_real(r.lhs) + "," + format_real(r.rhs) + "," +
           format_real(r.residual) + "," + format_real(r.tolerance) + "," + relation_symbol(r.relation) + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string catalog_json(const std::vector<CatalogInfo>& listing) {
  ordered_json arr = ordered_json::array();
  for (const auto& info : listing) {
    ordered_json o;
    o["name"] = info.name;
    ordered_json ps = ordered_json::array();
    for (const auto& p : info.params) {
      ordered_json pj;
      pj["name"] = p.name;
      pj["constraint"] = p.constraint;
      pj["default"] = number(p.default_value);
      ps.push_back(pj);
    }
    o["params"] = ps;
    o["domain"] = info.domain;
    o["description"] = info.description;
    arr.push_back(o);
  }
  ordered_json o;
  o["tool_version"] = tool_version();
  o["catalog"] = arr;
  return dump(o);
}

std::string generate_json(const GeneratedMetric& gm, const std::optional<ScalarFlatReport>& validation,
                          bool pass) {
  ordered_json o;
  o["tool_version"] = tool_version();
  o["metric"] = "family";
  o["params"] = params_json(gm.entry.params);
  o["domain"] = gm.entry.profile.domain.str();
  o["sampling_region"] = gm.entry.profile.region.str();
  o["w_ode_relative_error"] = number(gm.w_eval.ode_relative_error);
  if (validation) {
    ordered_json v;
    v["npoints"] = validation->npoints;
    v["max_sc_closed"] = number(validation->max_sc_closed);
    v["worst_t_closed"] = number(validation->worst_t_closed);
    v["max_sc_oracle"] = number(validation->max_sc_oracle);
    v["worst_t_oracle"] = number(validation->worst_t_oracle);
    v["closed_tolerance"] = number(validation->closed_tolerance);
    v["oracle_tolerance"] = number(validation->oracle_tolerance);
    v["pass"] = validation->pass;
    o["validation"] = v;
  }
  ordered_json verdict;
  verdict["pass"] = pass;
  o["verdict"] = verdict;
  return dump(o);
}

}  // namespace warpcheck
