#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gslc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input that parses but violates a precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An exact computation would exceed its configured memory budget.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A randomized estimator produced no usable samples.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace gslc
