#pragma once

#include <stdexcept>
#include <string>

namespace slantsum {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or precondition on user-supplied input
// (wrong class count, unknown config key, bad parameter range).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or incompatible file contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

// File system failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace slantsum
