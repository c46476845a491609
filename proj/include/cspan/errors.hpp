#pragma once

#include <stdexcept>

namespace cspan {

/// Input lines that cannot be read as "u v".
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates the graph model (loops, duplicates,
/// disconnection, unknown vertices).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-range algorithm or generator parameters.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A program broke the bandwidth model: too many IDs, oversized scalar,
/// two messages on one edge in a round, or a non-uniform broadcast.
class CongestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run needed more rounds than its cap or its fixed schedule allows.
class RoundBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A protocol was invoked on inputs that violate its stated precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cspan
