#pragma once

#include <stdexcept>
#include <string>

namespace peakon {

// Bad argument to a numerical routine (p < 1, theta out of range, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A state holding non-finite samples was handed to an operation that needs
// a classical solution.
class BlownUpState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A time step larger than the CFL guard allows. Carries the largest
// admissible step so callers can retry.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(const std::string& what, double max_dt)
      : std::runtime_error(what), max_dt_(max_dt) {}
  double max_dt() const noexcept { return max_dt_; }

 private:
  double max_dt_;
};

// Crest of a peaked wave could not be located in a snapshot.
class TrackingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace peakon
