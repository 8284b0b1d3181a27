#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace charplab {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (exit code 1).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Division by zero and friends.
class ArithmeticError : public InputError {
 public:
  using InputError::InputError;
};

/// A configured resource limit was exceeded (exit code 2).
class LimitError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (exit code 3).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace charplab
