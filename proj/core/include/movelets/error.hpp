#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace movelets {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class IngestionError : public Error {
 public:
  IngestionError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the documented domain of an operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The dataset or run configuration cannot support the requested run.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

}  // namespace movelets
