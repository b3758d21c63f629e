#pragma once

#include <map>
#include <string>
#include <vector>

namespace warpcheck {

/// Named tolerances of the verification suites. Names are fixed; setting an
/// unknown name throws DomainError.
class Tolerances {
 public:
  Tolerances();

  [[nodiscard]] double get(const std::string& name) const;
  void set(const std::string& name, double value);

  /// Applies WARPCHECK_TOL_<NAME> variables (NAME upper-cased).
  void apply_environment();

  [[nodiscard]] const std::map<std::string, double>& values() const { return values_; }
  static const std::vector<std::string>& names();

 private:
  std::map<std::string, double> values_;
};

}  // namespace warpcheck
