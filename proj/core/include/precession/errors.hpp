#pragma once

#include <stdexcept>
#include <string>

namespace precession {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operand shapes are incompatible.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Iterative method hit its budget. Carries the best estimate so far.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double partial_estimate, double error_estimate)
      : Error(what), partial_(partial_estimate), error_(error_estimate) {}
  double partial_estimate() const { return partial_; }
  double error_estimate() const { return error_; }

 private:
  double partial_;
  double error_;
};

// Least-squares design matrix lost rank at `column`.
class RankDeficientError : public Error {
 public:
  RankDeficientError(const std::string& what, int column) : Error(what), column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

// Top eigenvalue is (numerically) degenerate, so the gradient is undefined.
class DegenerateEigenvalueError : public Error {
 public:
  DegenerateEigenvalueError(const std::string& what, double gap) : Error(what), gap_(gap) {}
  double gap() const { return gap_; }

 private:
  double gap_;
};

}  // namespace precession
