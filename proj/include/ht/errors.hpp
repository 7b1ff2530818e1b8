#pragma once

#include <stdexcept>
#include <string>

namespace ht {

// Base of every error thrown by the library. Each subclass names one
// failure category so callers (and the CLI exit-code mapping) can dispatch
// on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Diagonal of an X-state does not sum to one.
class TraceError : public Error {
 public:
  using Error::Error;
};

// Matrix fails the positive-semidefinite check.
class PositivityError : public Error {
 public:
  using Error::Error;
};

// A 4x4 matrix has weight outside the X pattern.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Off-diagonal X entries are complex or carry the wrong sign.
class ConventionError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Physical parameter outside its admissible range (alpha >= M, p > 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Local filtering annihilated the state; post-selection cannot succeed.
class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

// Malformed user configuration (sweep JSON, CLI values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ht
