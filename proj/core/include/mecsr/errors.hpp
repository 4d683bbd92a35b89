#pragma once

#include <stdexcept>
#include <string>

namespace mecsr {

// Caller violated a documented precondition (bad index, wrong model, malformed source).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured budget or size cap would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sum-model accumulation left the representable range.
class ArithmeticError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Input text could not be decoded. `line` and `column` are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0,
             std::size_t byte = 0)
      : std::runtime_error(what), line_(line), column_(column), byte_(byte) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::size_t byte() const noexcept { return byte_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::size_t byte_;
};

// A generator/extractor pair produced something its own checker rejects.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Generator declines to build an instance whose source is infeasible by construction.
class RefusalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mecsr
