#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gfix {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point (or image point) lies outside the carrier of a space.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A distance, map or expression produced a non-finite or invalid value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Malformed construction parameters or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Invalid numeric input to an algorithm (negative coefficient, alpha >= 1, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A documented precondition was not met by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An exhaustive scan would exceed its hard budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace gfix
