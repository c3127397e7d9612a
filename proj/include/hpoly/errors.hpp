#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hpoly {

// Argument outside the mathematical domain of an operation (m = 0, r < 1,
// n <= m where n > m is required, field mismatch, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Point or vector length does not match the polynomial's variable count.
class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Exact integer arithmetic would leave the representable range.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

// A requested computation is larger than the configured budget allows.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. line() is 1-based; 0 means "no particular line".
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace hpoly
