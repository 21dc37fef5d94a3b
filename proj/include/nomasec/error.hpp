#pragma once

#include <stdexcept>
#include <string>

namespace nomasec {

// Base class for everything this library throws on bad input or failed numerics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A SystemConfig (or something built from one) violates its invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A function was called outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A closed-form series would exceed the term budget, or produced a value that
// had to be clamped by more than the allowed slack.
class SeriesError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature did not meet its tolerance within the subdivision budget.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

// Scenario text could not be parsed. Line and column are 1-based; 0 means
// "not tied to a location" (e.g. a missing key).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line = 0, int column = 0)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    if (line <= 0) return message;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
  }

  int line_;
  int column_;
};

}  // namespace nomasec
