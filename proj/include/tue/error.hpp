#pragma once

#include <stdexcept>
#include <string>

namespace tue {

/// Invalid experiment parameters. The message names the violated invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A strategy was asked to evaluate outside the region where it is trusted.
class ThresholdError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Iteration budget exhausted, quadrature non-convergence, eigen-solve failure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tue
