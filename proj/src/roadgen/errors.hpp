#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace roadgen {

// Caller broke an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value (polygon, catalog row, scenario document) violates an invariant.
// `invariant()` names the rule that failed, e.g. "no-overlap".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string invariant, const std::string& what)
      : std::runtime_error(invariant + ": " + what), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

// Parameters cannot be realized as geometry for the requested template.
class InstantiationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed structured text. Line and column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace roadgen
