#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fiberlab {

/// Base class for every error raised by the library. The `kind` string is the
/// stable identifier surfaced in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Mismatched polynomial rings, fields, algebras or modules.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error("structural", what) {}
};

class UndefinedOrderError : public Error {
 public:
  explicit UndefinedOrderError(const std::string& what) : Error("undefined-order", what) {}
};

/// A configurable resource ceiling (pair count, module dimension) was hit.
class LimitExceeded : public Error {
 public:
  explicit LimitExceeded(const std::string& what) : Error("limit-exceeded", what) {}
};

class NotCofiniteError : public Error {
 public:
  explicit NotCofiniteError(const std::string& what) : Error("not-cofinite", what) {}
};

class UnsupportedInput : public Error {
 public:
  explicit UnsupportedInput(const std::string& what) : Error("unsupported-input", what) {}
};

class InvalidFiber : public Error {
 public:
  explicit InvalidFiber(const std::string& what) : Error("invalid-fiber", what) {}
};

class ArithmeticError : public Error {
 public:
  explicit ArithmeticError(const std::string& what) : Error("arithmetic", what) {}
};

/// Randomized search and symbolic fallback could not settle a question.
class Inconclusive : public Error {
 public:
  explicit Inconclusive(const std::string& what) : Error("inconclusive", what) {}
};

class IncompleteProfile : public Error {
 public:
  explicit IncompleteProfile(std::vector<std::string> missing)
      : Error("incomplete-profile", message(missing)), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  static std::string message(const std::vector<std::string>& missing) {
    std::string s = "profile is missing required fields:";
    for (const auto& m : missing) s += " " + m;
    return s;
  }
  std::vector<std::string> missing_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int col)
      : Error("parse", format(what, line, col)), line_(line), col_(col) {}
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

 private:
  static std::string format(const std::string& what, int line, int col) {
    return "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what;
  }
  int line_;
  int col_;
};

/// Declared data contradicts a computed value or another declaration.
class InconsistentInput : public Error {
 public:
  explicit InconsistentInput(const std::string& what) : Error("inconsistent-input", what) {}
};

/// A computed value disagreed with its expected value.
class CheckFailure : public Error {
 public:
  explicit CheckFailure(const std::string& what) : Error("check-failure", what) {}
};

}  // namespace fiberlab
