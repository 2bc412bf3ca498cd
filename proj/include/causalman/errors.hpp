#pragma once

#include <stdexcept>
#include <string>

namespace causalman {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed config, unknown node, ill-typed value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A physics formula was called outside its domain.
class PhysicsError : public Error {
 public:
  using Error::Error;
};

}  // namespace causalman
