#pragma once

#include <stdexcept>
#include <string>

namespace skew {

/// Form of the wrong degree passed to a degree-specific operation.
class DegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the domain of an operation (non-self-dual form, non-traceless tensor,
/// evaluation point on a chart boundary, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Chart parameters for which the profile functions are not positive on the grid.
class ParameterRangeError : public std::runtime_error {
 public:
  ParameterRangeError(const std::string& what, double violating_x)
      : std::runtime_error(what), x_(violating_x) {}
  double violating_x() const { return x_; }

 private:
  double x_;
};

/// Non-finite integrand or similar numerical breakdown.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skew
