#pragma once

#include <stdexcept>
#include <string>

namespace warpcheck {

/// Violated precondition: bad parameters, point outside a domain, grid
/// outside the admissible interval. Surfaces as CLI exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a value: vanishing gradient,
/// quadrature non-convergence, ODE blow-up, failed level inversion.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace warpcheck
