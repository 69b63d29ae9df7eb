#pragma once

#include <stdexcept>
#include <string>

namespace imc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different state spaces or have incompatible sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A credal set description violates its family's invariants.
class InvalidModelError : public Error {
 public:
  using Error::Error;
};

/// A constraint set has an empty feasible region.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured size cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs precise rows received an imprecise one.
class NotPreciseError : public Error {
 public:
  using Error::Error;
};

}  // namespace imc
