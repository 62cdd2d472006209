#pragma once

#include <stdexcept>
#include <string>

namespace galiray {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different spatial dimensions, or a dimension is unsupported.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A polynomial factor would exceed the configured degree bound.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

/// A Gaussian exponent lost negative-definiteness, or an integral diverges.
class NotNormalizable : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or fixture data.
class ConfigError : public Error {
 public:
  using Error::Error;
};

void require_dim(int dim, int lo = 1, int hi = 3);
void require_same_dim(int a, int b, const char* what);

}  // namespace galiray
