#pragma once

#include <stdexcept>
#include <string>

namespace rmbmi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A file was readable but its contents are malformed or unsupported.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Input that makes an operation undefined (zero total mass, empty sets).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration text. `line()` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace rmbmi
