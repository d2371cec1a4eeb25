#pragma once

#include <stdexcept>
#include <string>

namespace resist {

/// Bad caller input: wrong curvature id, inverted endpoints, empty grids.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A coordinate fell outside the open domain of the metric (or of a curve).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature or root finding produced a non-finite or unusable result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace resist
