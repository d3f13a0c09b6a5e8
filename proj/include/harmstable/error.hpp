#pragma once

#include <stdexcept>
#include <string>

namespace harmstable {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A kernel was evaluated at one of its singular points.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A run configuration is inconsistent (regime or resolution violations).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical integration produced a non-finite intermediate.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace harmstable
