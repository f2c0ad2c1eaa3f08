#pragma once

#include <stdexcept>
#include <string>

namespace badpoints {

// Every error raised by the library carries a short machine-readable kind
// ("arity_mismatch", "parse_error", ...) next to the human message. The CLI
// prints both on one line.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(std::size_t lhs, std::size_t rhs, const std::string& where)
      : Error("arity_mismatch", where + ": arity " + std::to_string(lhs) +
                                    " vs " + std::to_string(rhs)) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("parse_error", "line " + std::to_string(line) + ", column " +
                                 std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t budget)
      : Error("budget_exceeded", "reduction step budget of " +
                                     std::to_string(budget) + " exceeded") {}
};

class DomainError : public Error {
 public:
  DomainError(std::string kind, const std::string& message)
      : Error(std::move(kind), message) {}
};

}  // namespace badpoints
