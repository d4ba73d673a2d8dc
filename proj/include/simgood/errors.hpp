#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simgood {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a precondition: bad dimensions, out-of-domain parameters,
/// empty inputs. Maps to CLI exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Non-finite values, non-convergence or an internal solver failure.
/// Maps to CLI exit code 2.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what, double last_value = 0.0)
      : Error(what), last_value_(last_value) {}

  /// Last iterate (or offending value) at the point of failure.
  double last_value() const noexcept { return last_value_; }

 private:
  double last_value_;
};

}  // namespace simgood
