#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace vortexlab {

using Complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold for its input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method (root finder, CG, Newton, continuation) gave up.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A requested complex value is not representable in double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A post-condition consistency check failed (unconverged or corrupted input).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace vortexlab
