#pragma once

#include <stdexcept>
#include <string>

namespace kdvgas {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Theta function too close to its zero set for a stable logarithmic derivative.
class NearZeroError : public Error {
 public:
  using Error::Error;
};

/// Series or discretization did not converge within its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class DensityError : public Error {
 public:
  using Error::Error;
};

/// Reflection coefficient is not strictly positive where it must be.
class PositivityError : public Error {
 public:
  using Error::Error;
};

/// Exponent bound exceeded; the direct routes refuse and the caller should use asymptotics.
class OverflowGuard : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Elliptic modulus too close to 1 (edge of the Whitham fan).
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kdvgas
