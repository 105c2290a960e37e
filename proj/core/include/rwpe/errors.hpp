#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rwpe {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ill-typed term or type construction. `path` locates the offending node.
class TypeError : public Error {
 public:
  TypeError(const std::string& message, std::string path = {})
      : Error(path.empty() ? message : message + " at " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Runtime failure of the reference interpreter (division by zero, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Resource limits of the rewriting engines.
class EngineError : public Error {
 public:
  using Error::Error;
};

class FuelExhausted : public EngineError {
 public:
  using EngineError::EngineError;
};

class BudgetExhausted : public EngineError {
 public:
  using EngineError::EngineError;
};

class RecursionLimit : public EngineError {
 public:
  using EngineError::EngineError;
};

/// Invalid rule set handed to the compiler (empty, bare wildcard, nonlinear).
class RuleError : public Error {
 public:
  using Error::Error;
};

/// Decision tree that addresses a nonexistent vector slot.
class MalformedTree : public Error {
 public:
  using Error::Error;
};

/// A side condition met a binding that is not an integer or boolean literal.
class NonConstantBinding : public Error {
 public:
  using Error::Error;
};

/// Identifier outside the arithmetic fragment understood by the bounds analysis.
class UnsupportedOp : public Error {
 public:
  using Error::Error;
};

/// Bounds analysis input that is not a let chain over base-typed arithmetic.
class NonStraightlineInput : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a term, type or rule file; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace rwpe
