#pragma once

#include <stdexcept>
#include <string>

namespace discrepal {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or missing input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid experiment configuration or CLI value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller violated an operation's precondition (bad index, empty set, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Operand shapes do not match.
class DimensionError : public UsageError {
 public:
  using UsageError::UsageError;
};

// A numerical routine failed its own accuracy check.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace discrepal
