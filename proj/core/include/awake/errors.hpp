#pragma once

#include <stdexcept>
#include <string>

namespace awake {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact oracle was asked to solve an instance above its size cap.
class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

/// A fractional assignment violates c_v <= 1 somewhere.
class InvalidAssignment : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition (e.g. a shorter augmenting
/// path exists when building a layer graph).
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// A path handed to augment() is not augmenting w.r.t. the matching.
class InvalidPath : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace awake
