#pragma once

#include <stdexcept>
#include <string>

namespace gricci {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fields sampled on grids of different sizes were combined.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation (non-positive
/// weight, violated precondition, mismatched trajectories, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A time step exceeds the explicit stability limit.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, double dt, double limit)
      : Error(what), dt_(dt), limit_(limit) {}
  double dt() const { return dt_; }
  double limit() const { return limit_; }

 private:
  double dt_;
  double limit_;
};

/// The adaptive step size collapsed below the configured floor.
class StagnationError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failure, loss of positivity, or another numerical breakdown.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gricci
