#include "warpcheck/tolerances.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "warpcheck/errors.hpp"

namespace warpcheck {

namespace {

const std::map<std::string, double>& defaults() {
  static const std::map<std::string, double> table{
      {"bochner", 1e-7},        {"cauchy_schwarz", 1e-8}, {"constancy", 1e-7},
      {"eqn_h", 1e-10},         {"eqn_scalar", 1e-7},     {"fh", 1e-10},
      {"first_integral", 1e-8},
      {"flatness", 1e-9},       {"flatness_oracle", 1e-6}, {"g11", 1e-12},
      {"gauss_bonnet", 1e-9},   {"greens", 1e-6},         {"harmonicity", 1e-8},
      {"lemma21", 1e-8},        {"lemma24", 1e-9},        {"monotone", 1e-6},
      {"ode_match", 1e-6},      {"reconstruction", 1e-7}, {"riccati", 1e-10},
      {"rigidity", 1e-8},       {"scalar_flat", 1e-8},    {"scalar_flat_oracle", 1e-6},
      {"trace_free", 1e-12},    {"w_prime", 1e-5},
  };
  return table;
}

}  // namespace

Tolerances::Tolerances() : values_(defaults()) {}

double Tolerances::get(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw DomainError("unknown tolerance name '" + name + "'");
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  const auto it = values_.find(name);
  if (it == values_.end()) throw DomainError("unknown tolerance name '" + name + "'");
  if (!(value > 0.0)) throw DomainError("tolerance '" + name + "' must be positive");
  it->second = value;
}

void Tolerances::apply_environment() {
  for (const auto& name : names()) {
    std::string var = "WARPCHECK_TOL_" + name;
    std::transform(var.begin(), var.end(), var.begin(), [](unsigned char c) { return std::toupper(c); });
    const char* raw = std::getenv(var.c_str());
    if (raw == nullptr) continue;
    const std::string text(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw DomainError("cannot parse " + var + "='" + text + "'");
    }
    set(name, v);
  }
}

const std::vector<std::string>& Tolerances::names() {
  static const std::vector<std::string> list = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : defaults()) out.push_back(k);
    return out;
  }();
  return list;
}

}  // namespace warpcheck
