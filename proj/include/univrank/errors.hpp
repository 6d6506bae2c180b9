#pragma once

#include <stdexcept>
#include <string>

namespace univrank {

// Maps onto the CLI exit codes: usage = 1, hypothesis = 2, budget = 3.
enum class ErrorKind { usage = 1, hypothesis = 2, budget = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Bad input shape: malformed polynomial, wrong coordinate length, bad flag.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

/// A mathematical precondition does not hold (reducible polynomial,
/// non-coprime discriminants, unsupported degree, ...).
class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& what) : Error(ErrorKind::hypothesis, what) {}
};

/// An enumeration or search budget was exhausted before completion.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::budget, what) {}
};

}  // namespace univrank
