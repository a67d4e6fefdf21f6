#pragma once

#include <stdexcept>
#include <string>

namespace sqg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state or argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The support of a state comes too close to the truncation boundary for a
/// shifted-index formula to be evaluated exactly.
class MarginError : public Error {
 public:
  using Error::Error;
};

/// The transform evaluator could not reproduce the direct sum at startup.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// A time step produced NaN or infinity.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Conservation drift exceeded the budget and step halving could not recover.
class DriftError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration text or flag.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sqg
