#pragma once

#include <stdexcept>
#include <string>

namespace cmperiodica {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (files, polynomial strings, parameters).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Text that could not be parsed; carries a 1-based column inside the parsed string.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t column)
      : InputError(what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// A mathematical precondition failed (zerodivisor parameter, complexity too small, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic impossibility such as inverting zero.
class MathError : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold by construction did not hold.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace cmperiodica
