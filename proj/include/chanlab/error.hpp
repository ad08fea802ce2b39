// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace chanlab {

/// Base of every error raised by the library. The CLI maps subclasses to
/// exit codes (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ParseError(const std::string &what) : Error(what) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

/// Data violates a domain-type invariant (non-finite value, duplicate class...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Binary container has the wrong magic/version or is truncated.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Binary container ended before the declared payload.
class LengthError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Empty input where at least one record is required.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Argument outside a function's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent run configuration (bad flags, impossible episode shape...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical procedure failed (no root bracket, divergent optimisation...).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Theoretical preconditions not met (e.g. identical class means on a channel).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure; message includes the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace chanlab
