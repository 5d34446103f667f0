#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revive {

/// Invalid caller input: shape mismatches, out-of-range indices, bad thresholds.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix could not be constructed (non-finite entries, zero extent).
class ConstructionError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Malformed file or record contents.
class FormatError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Numerical failure. Carries the shape of the matrix involved when known.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t rows = 0, std::size_t cols = 0)
      : std::runtime_error(what), rows_(rows), cols_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
};

/// The spectrum carries no energy (all singular values are zero).
class DegenerateMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A metric is undefined for its inputs, e.g. cosine against a zero matrix.
class UndefinedMetricError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace revive
