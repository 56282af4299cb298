#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cadyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Alphabet, dimension, sidedness or shape disagreement between operands.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured cap. `required`
/// is the amount of work the operation needed (saturated at UINT64_MAX).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t limit)
      : Error(what + ": requires " + std::to_string(required) + " enumerations, budget is " +
              std::to_string(limit)),
        required_(required),
        limit_(limit) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace cadyn
