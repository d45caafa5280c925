#pragma once

#include <stdexcept>
#include <string>

namespace flv {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent input (dimension mismatch, empty list, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A decimal could not be represented as a bounded-denominator fraction.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller-side precondition violated, e.g. a point that is not an equilibrium.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Order combination the analysis does not cover (one order below 1, one above).
class UnsupportedCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flv
