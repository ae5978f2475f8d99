#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gma {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation is undefined for the current regime or object state.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite or malformed numerical data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration or input file failed validation (CLI exit code 2).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for failures of an iterative computation (CLI exit code 1).
class SolverError : public std::runtime_error {
 public:
  SolverError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Positive definiteness or the cone condition failed at some grid point.
class ConeBreach : public SolverError {
 public:
  ConeBreach(const std::string& what, std::size_t point, std::vector<double> coords,
             double value)
      : SolverError("ConeBreach", what),
        point_(point),
        coords_(std::move(coords)),
        value_(value) {}
  std::size_t point() const noexcept { return point_; }
  const std::vector<double>& coords() const noexcept { return coords_; }
  /// Smallest eigenvalue or cone margin observed at the worst point.
  double value() const noexcept { return value_; }

 private:
  std::size_t point_;
  std::vector<double> coords_;
  double value_;
};

class MaxIterExceeded : public SolverError {
 public:
  explicit MaxIterExceeded(const std::string& what) : SolverError("MaxIterExceeded", what) {}
};

class LinearSolveStall : public SolverError {
 public:
  explicit LinearSolveStall(const std::string& what) : SolverError("LinearSolveStall", what) {}
};

class StepUnderflow : public SolverError {
 public:
  explicit StepUnderflow(const std::string& what) : SolverError("StepUnderflow", what) {}
};

/// Discrete compatibility integral (total mass balance) does not hold.
class CompatibilityDefect : public SolverError {
 public:
  CompatibilityDefect(const std::string& what, double defect)
      : SolverError("CompatibilityDefect", what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

}  // namespace gma
