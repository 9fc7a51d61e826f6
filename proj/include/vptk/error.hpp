#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vptk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A symbol outside the declared alphabet, or incompatible alphabets.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

/// A transducer definition that references undeclared states or symbols.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on a model outside its class (e.g. a
/// non-tail-recursive transducer given to the stack-machine translation).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A word that does not have the required nesting shape. `offset` is the
/// position of the earliest symbol at which the shape is violated.
class ShapeError : public Error {
 public:
  ShapeError(const std::string& message, std::size_t offset)
      : Error(message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// An output set grew past the configured cap.
class OutputLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace vptk
