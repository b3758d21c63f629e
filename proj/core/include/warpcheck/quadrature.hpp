#pragma once

#include "warpcheck/jet.hpp"

namespace warpcheck {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  int max_depth = 60;
  double rel_floor = 1e-14;
};

/// Adaptive composite Simpson with Richardson correction. Throws
/// SingularError when the recursion depth is exhausted without meeting the
/// tolerance or the integrand is not finite.
double integrate(const ScalarFn& f, double a, double b, const QuadratureOptions& opts = {});

}  // namespace warpcheck
