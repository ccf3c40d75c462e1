#pragma once

#include <stdexcept>
#include <string>

namespace syssamp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration: missing column, unknown option value, malformed stratum.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A cell of an input table could not be read as a finite real.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::string column, const std::string& what)
      : Error(what), row_(row), column_(std::move(column)) {}

  /// 1-based data row (header excluded).
  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

/// N, n, k do not describe a valid systematic design.
class DesignError : public Error {
 public:
  using Error::Error;
};

/// Input outside the domain of a formula (negative bracket, too few units, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Division by zero in an estimator.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Constant values where dispersion is required.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// The family MSE does not depend on alpha (g = 0 or lambda = 0).
class NoOptimumError : public Error {
 public:
  using Error::Error;
};

}  // namespace syssamp
