#pragma once

#include <stdexcept>
#include <string>

namespace bpe {

// Malformed input to an operation: length mismatch, bad index, cyclic order.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A parameter outside the range an operation accepts (k < 0, k < 2, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured budget was exhausted. Never means "no".
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The modified planner was asked to run on an instance outside restriction P.
class UnsafeVariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line),
        message_(std::move(message)) {}

  int line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  std::string message_;
};

}  // namespace bpe
