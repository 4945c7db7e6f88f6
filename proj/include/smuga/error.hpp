#pragma once

#include <stdexcept>
#include <string>

namespace smuga {

/// Shape mismatch between values that must agree (lengths, divisibility).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the evaluator when a fresh genotype would exceed the budget.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

}  // namespace smuga
