// warpcheck: verification suites, monotone series and family generation for
// warped-product metrics.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
// configuration error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "warpcheck/errors.hpp"
#include "warpcheck/harmonic.hpp"
#include "warpcheck/identities.hpp"
#include "warpcheck/levelset.hpp"
#include "warpcheck/odes.hpp"
#include "warpcheck/registry.hpp"
#include "warpcheck/report.hpp"
#include "warpcheck/tolerances.hpp"

namespace wc = warpcheck;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::string metric;
  std::vector<std::string> params;
  int grid = 0;
  std::string epsilon = "0.001";
  std::string quantity;
  std::string out;
  std::string format = "json";
  std::vector<std::string> tols;
};

double real_or_throw(const std::string& text, const std::string& what) {
  const auto v = wc::parse_real(text);
  if (!v) throw wc::DomainError("cannot parse " + what + " '" + text + "' as a number");
  return *v;
}

std::pair<std::string, double> key_value(const std::string& kv, const std::string& what) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw wc::DomainError(what + " must have the form name=value: '" + kv + "'");
  return {kv.substr(0, eq), real_or_throw(kv.substr(eq + 1), what + " value")};
}

wc::ParamMap parse_params(const std::vector<std::string>& raw) {
  wc::ParamMap out;
  for (const auto& kv : raw) {
    const auto [k, v] = key_value(kv, "--param");
    out[k] = v;
  }
  return out;
}

// Environment first, flags override.
wc::Tolerances resolve_tolerances(const std::vector<std::string>& raw) {
  wc::Tolerances tol;
  tol.apply_environment();
  for (const auto& kv : raw) {
    const auto [k, v] = key_value(kv, "--tol");
    tol.set(k, v);
  }
  return tol;
}

double parse_epsilon(const RunConfig& cfg) {
  const double eps = real_or_throw(cfg.epsilon, "--epsilon");
  if (!(eps > 0.0 && eps < 0.1)) throw wc::DomainError("--epsilon must lie in (0, 0.1)");
  return eps;
}

int grid_or(const RunConfig& cfg, int fallback) {
  if (cfg.grid == 0) return fallback;
  if (cfg.grid < 8) throw wc::DomainError("--grid must be at least 8");
  return cfg.grid;
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw wc::DomainError("--format must be json or csv");
}

void emit(const std::string& body, const std::string& path) {
  if (path.empty()) {
    std::cout << body;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw wc::DomainError("cannot open output file '" + path + "'");
  f << body;
}

std::size_t count_failures(const std::vector<wc::IdentityResidual>& suite) {
  std::size_t n = 0;
  for (const auto& r : suite) n += r.pass ? 0 : 1;
  return n;
}

void summarize(const std::string& command, const std::vector<wc::IdentityResidual>& suite) {
  std::cerr << command << ": " << suite.size() - count_failures(suite) << "/" << suite.size() << " checks pass\n";
  std::size_t shown = 0;
  for (const auto& r : suite) {
    if (r.pass || shown >= 10) continue;
    ++shown;
    std::cerr << "  FAIL " << r.name << " at t=" << wc::format_real(r.t) << ": lhs=" << wc::format_real(r.lhs)
              << " rhs=" << wc::format_real(r.rhs) << " rel_gap=" << wc::format_real(r.relative_gap())
              << " tol=" << wc::format_real(r.tolerance) << "\n";
  }
}

// Grid of level values for a monotone quantity over the entry's harmonic.
wc::GridSpec quantity_grid(const wc::RadialHarmonic& h, wc::Quantity q,
                           const wc::ParamMap& params, double eps, int count) {
  switch (q) {
    case wc::Quantity::plus:
      return wc::default_grid_plus(eps, count);
    case wc::Quantity::minus: {
      const auto it = params.find("t_lo");
      const double t_lo = it != params.end() ? it->second : -50.0;
      return wc::default_grid_minus(t_lo, eps, count);
    }
    case wc::Quantity::mw:
      return wc::default_grid_mw(h, count);
  }
  return wc::default_grid_plus(eps, count);
}

wc::Quantity quantity_or_throw(const std::string& name) {
  const auto q = wc::parse_quantity(name);
  if (!q) throw wc::DomainError("--quantity must be plus, minus or mw");
  return *q;
}

int cmd_catalog(const RunConfig& cfg) {
  emit(wc::catalog_json(wc::catalog_listing()), cfg.out);
  return kPass;
}

int cmd_suite(const RunConfig& cfg, const std::string& command) {
  check_format(cfg.format);
  const wc::ParamMap params = parse_params(cfg.params);
  const wc::Tolerances tol = resolve_tolerances(cfg.tols);
  const double eps = parse_epsilon(cfg);
  const int count = grid_or(cfg, 32);
  const wc::CatalogEntry entry = wc::make_entry(cfg.metric, params, eps);

  wc::VerifyReport report;
  report.command = command;
  report.metric = cfg.metric;
  report.params = entry.params;
  report.suite = command == "verify" ? wc::verification_suite(entry, count, tol) : wc::rigidity_suite(entry, count, tol);
  report.pass = count_failures(report.suite) == 0;

  if (!cfg.quantity.empty()) {
    const wc::Quantity q = quantity_or_throw(cfg.quantity);
    const wc::RadialHarmonic h = wc::canonical_harmonic(entry);
    report.series = wc::monotone_series(h, q, quantity_grid(h, q, params, eps, 512));
    report.series_verdict = wc::monotonicity_verdict(*report.series, tol.get("monotone"));
    report.pass = report.pass && report.series_verdict->pass;
  }

  summarize(command, report.suite);
  emit(cfg.format == "csv" ? wc::suite_csv(report.suite) : wc::to_json(report), cfg.out);
  return report.pass ? kPass : kFail;
}

int cmd_monotone(const RunConfig& cfg) {
  check_format(cfg.format);
  if (cfg.quantity.empty()) throw wc::DomainError("monotone needs --quantity plus|minus|mw");
  const wc::Quantity q = quantity_or_throw(cfg.quantity);
  const wc::ParamMap params = parse_params(cfg.params);
  const wc::Tolerances tol = resolve_tolerances(cfg.tols);
  const double eps = parse_epsilon(cfg);
  const wc::CatalogEntry entry = wc::make_entry(cfg.metric, params, eps);
  const wc::RadialHarmonic h = wc::canonical_harmonic(entry);
  const wc::GridSpec grid = quantity_grid(h, q, params, eps, grid_or(cfg, 512));
  const wc::MonotoneSeries s = wc::monotone_series(h, q, grid);
  const wc::MonotonicityVerdict v = wc::monotonicity_verdict(s, tol.get("monotone"));

  std::cerr << "monotone " << wc::quantity_name(q) << ": max dM/dt = " << wc::format_real(v.worst_derivative)
            << " at t = " << wc::format_real(v.worst_t) << " (tol " << wc::format_real(v.tolerance) << ")";
  if (s.constant_value) std::cerr << ", constant " << wc::format_real(*s.constant_value);
  std::cerr << "\n";
  emit(cfg.format == "csv" ? wc::series_csv(s) : wc::series_json(cfg.metric, entry.params, grid, s, v), cfg.out);
  return v.pass ? kPass : kFail;
}

struct OdeOptions {
  std::vector<std::string> c_values;
  std::string initial;  // "r0,h0"
  std::string to;
};

std::pair<double, double> pair_or_throw(const std::string& text, const std::string& what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw wc::DomainError(what + " must have the form a,b");
  return {real_or_throw(text.substr(0, comma), what), real_or_throw(text.substr(comma + 1), what)};
}

int cmd_ode(const RunConfig& cfg, const OdeOptions& opt) {
  check_format(cfg.format);
  const wc::Tolerances tol = resolve_tolerances(cfg.tols);
  const int count = grid_or(cfg, 20);
  wc::VerifyReport report;
  report.command = "ode";
  report.metric = "riccati";

  if (!opt.initial.empty()) {
    if (opt.to.empty()) throw wc::DomainError("--initial needs --to r1");
    const auto [r0, h0] = pair_or_throw(opt.initial, "--initial");
    const double r1 = real_or_throw(opt.to, "--to");
    const wc::RiccatiSolution sol = wc::integrate_riccati(r0, h0, r1);
    report.params = {{"r0", r0}, {"h0", h0}, {"r1", r1}};
    if (sol.fitted_c) report.params["c_fit"] = *sol.fitted_c;
    if (sol.blowup_at) {
      report.params["blowup_at"] = *sol.blowup_at;
      std::cerr << "ode: solution blows up near r = " << wc::format_real(*sol.blowup_at) << "\n";
    }
    for (double r : wc::linspace(sol.covered_lo(), sol.covered_hi(), count)) {
      const double h = sol(r);
      const double exact = sol.fitted_c ? wc::closed_form_h(*sol.fitted_c, r).value : 2.0 / r;
      report.suite.push_back(wc::make_residual("ode_match", r, h, exact, tol.get("ode_match")));
    }
    report.pass = count_failures(report.suite) == 0 && sol.reached_end();
  } else {
    std::vector<double> cs{-2.0, -1.0, 0.0, 1.0, 2.0};
    if (!opt.c_values.empty()) {
      cs.clear();
      for (const auto& c : opt.c_values) cs.push_back(real_or_throw(c, "--c-family"));
    }
    for (std::size_t i = 0; i < cs.size(); ++i) {
      report.params["c" + std::to_string(i)] = cs[i];
      const auto part = wc::family_residuals(cs[i], count, tol);
      report.suite.insert(report.suite.end(), part.begin(), part.end());
    }
    report.pass = count_failures(report.suite) == 0;
  }
  summarize("ode", report.suite);
  emit(cfg.format == "csv" ? wc::suite_csv(report.suite) : wc::to_json(report), cfg.out);
  return report.pass ? kPass : kFail;
}

struct GenerateOptions {
  std::string c_family = "1";
  std::string K = "12.566370614359172";
  std::string c0 = "0.079577471545947673";
  std::string domain;
  std::string T = "1";
  bool validate = false;
};

int cmd_generate(const RunConfig& cfg, const GenerateOptions& opt) {
  if (cfg.format != "json") throw wc::DomainError("generate writes json only");
  const wc::Tolerances tol = resolve_tolerances(cfg.tols);
  const double eps = parse_epsilon(cfg);
  const double c = real_or_throw(opt.c_family, "--c-family");
  const double K = real_or_throw(opt.K, "--K");
  const double c0 = real_or_throw(opt.c0, "--c0");
  const double T = real_or_throw(opt.T, "--T");
  wc::Interval domain = wc::default_family_domain(c, T);
  if (!opt.domain.empty()) {
    const auto [lo, hi] = pair_or_throw(opt.domain, "--domain");
    domain = {lo, hi, true, true};
  }
  const wc::GeneratedMetric gm = wc::generate_metric(c, K, c0, domain, eps);
  std::optional<wc::ScalarFlatReport> validation;
  bool pass = true;
  if (opt.validate) {
    validation = wc::scalar_flat_validate(gm, grid_or(cfg, 100), tol.get("scalar_flat"), tol.get("scalar_flat_oracle"));
    pass = validation->pass;
    std::cerr << "generate: max|Sc| closed " << wc::format_real(validation->max_sc_closed) << ", oracle "
              << wc::format_real(validation->max_sc_oracle) << (pass ? " (pass)" : " (FAIL)") << "\n";
  }
  emit(wc::generate_json(gm, validation, pass), cfg.out);
  return pass ? kPass : kFail;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool metric) {
  if (metric) {
    sub->add_option("--metric", cfg.metric, "catalog metric name")->required();
    sub->add_option("--param", cfg.params, "metric parameter name=value (repeatable)");
    sub->add_option("--quantity", cfg.quantity, "monotone quantity: plus, minus or mw");
  }
  sub->add_option("--grid", cfg.grid, "number of grid points / levels (>= 8)");
  sub->add_option("--epsilon", cfg.epsilon, "relative margin from open domain ends, in (0, 0.1)");
  sub->add_option("--out", cfg.out, "output path (default stdout)");
  sub->add_option("--format", cfg.format, "json or csv");
  sub->add_option("--tol", cfg.tols, "tolerance override name=value (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warpcheck: level-set monotonicity verification for warped-product metrics"};
  app.set_version_flag("--version", wc::tool_version());
  app.require_subcommand(1);

  RunConfig cfg;
  OdeOptions ode;
  GenerateOptions gen;

  auto* catalog = app.add_subcommand("catalog", "list catalog metrics, parameters and domains");
  catalog->add_option("--out", cfg.out, "output path (default stdout)");
  auto* verify = app.add_subcommand("verify", "flatness and identity suite on a catalog metric");
  add_common(verify, cfg, true);
  auto* identities = app.add_subcommand("identities", "identity suite plus equality-case structure");
  add_common(identities, cfg, true);
  auto* monotone = app.add_subcommand("monotone", "monotone quantity series and verdict");
  add_common(monotone, cfg, true);
  auto* odecmd = app.add_subcommand("ode", "Riccati family residuals and integration checks");
  add_common(odecmd, cfg, false);
  odecmd->add_option("--c-family", ode.c_values, "family parameter (repeatable; default -2,-1,0,1,2)");
  odecmd->add_option("--initial", ode.initial, "integrate a single trajectory from r0,h0");
  odecmd->add_option("--to", ode.to, "end point r1 of the single trajectory");
  auto* generate = app.add_subcommand("generate", "build and optionally validate a family metric");
  add_common(generate, cfg, false);
  generate->add_option("--c-family", gen.c_family, "family parameter c");
  generate->add_option("--K", gen.K, "w integration constant (> 0)");
  generate->add_option("--c0", gen.c0, "metric normalisation (> 0)");
  generate->add_option("--domain", gen.domain, "open coordinate interval lo,hi");
  generate->add_option("--T", gen.T, "right end for c_family <= 0");
  generate->add_flag("--validate", gen.validate, "check scalar flatness on the grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*catalog) return cmd_catalog(cfg);
    if (*verify) return cmd_suite(cfg, "verify");
    if (*identities) return cmd_suite(cfg, "identities");
    if (*monotone) return cmd_monotone(cfg);
    if (*odecmd) return cmd_ode(cfg, ode);
    if (*generate) return cmd_generate(cfg, gen);
  } catch (const wc::DomainError& e) {
    std::cerr << "warpcheck: error: " << e.what() << "\n";
    return kUsage;
  } catch (const wc::SingularError& e) {
    std::cerr << "warpcheck: numerical failure: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "warpcheck: failure: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
