#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace spikeslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range hyperparameter or argument.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A design column (or the response) carries no variation.
class DegenerateDataError : public Error {
 public:
  DegenerateDataError(const std::string& what, std::ptrdiff_t column)
      : Error(what), column_(column) {}

  /// Offending column index, or -1 when the response is degenerate.
  std::ptrdiff_t column() const noexcept { return column_; }

 private:
  std::ptrdiff_t column_;
};

/// X_delta' X_delta is not positive definite under a g- or f-slab.
class SingularDesignError : public Error {
 public:
  SingularDesignError(const std::string& what, std::vector<int> included)
      : Error(what), included_(std::move(included)) {}

  const std::vector<int>& included() const noexcept { return included_; }

 private:
  std::vector<int> included_;
};

/// The posterior scale S_N is not positive (perfect fit).
class DegenerateFitError : public Error {
 public:
  using Error::Error;
};

/// Cholesky failure inside a running chain.
class NumericalBreakdownError : public Error {
 public:
  NumericalBreakdownError(const std::string& what, long iteration)
      : Error(what), iteration_(iteration) {}

  long iteration() const noexcept { return iteration_; }

 private:
  long iteration_;
};

}  // namespace spikeslab
