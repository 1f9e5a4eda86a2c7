#pragma once

#include <stdexcept>
#include <string>

namespace rutv {

/// Operand shapes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A scalar argument (rank, iteration count, block size) is out of range.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative kernel hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity that must be nonnegative in exact arithmetic drifted too far below zero.
class NumericalConsistencyError : public std::runtime_error {
 public:
  explicit NumericalConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rutv
