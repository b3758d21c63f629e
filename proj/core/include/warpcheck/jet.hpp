#pragma once

#include <functional>

namespace warpcheck {

/// Value with first and second derivative of a one-variable function.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Value with derivatives through third order. Harmonic functions need the
/// extra order for the Laplacian of |grad G|.
struct Jet3 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

using JetFn = std::function<Jet(double)>;
using Jet3Fn = std::function<Jet3(double)>;
using ScalarFn = std::function<double(double)>;

}  // namespace warpcheck
