#pragma once

#include <stdexcept>
#include <string>

namespace latred {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input matrix is rank deficient (some Gram-Schmidt norm below tolerance).
class RankError : public Error {
 public:
  using Error::Error;
};

/// Iteration cap hit; the reduction did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Dimensions out of range for the requested operation (includes the
/// brute-force oracle's size refusal and the ML search-space guard).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; carries a file position.
class ParseError : public Error {
 public:
  ParseError(const std::string& origin, std::size_t line, std::size_t column,
             const std::string& what)
      : Error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
              ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Invalid configuration (CLI flags, config file, parameter ranges).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace latred
