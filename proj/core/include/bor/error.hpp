#pragma once

#include <stdexcept>
#include <string>

namespace bor {

/// Argument outside the mathematical domain of an operation (negative x, bad tau, H out of range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Shapes or grids of the inputs do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed external data (CSV rows, non-uniform grids, non-dyadic lengths).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Floating-point breakdown: overflow, blow-up monitor, broken algebraic invariant.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bor
