#pragma once

#include <stdexcept>
#include <string>

namespace solvflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Off-diagonal Ricci entries exceed the tolerance: the diagonal ansatz is
// not preserved by the flow for these structure constants.
class DiagonalityViolation : public Error {
 public:
  DiagonalityViolation(const std::string& what, double magnitude)
      : Error(what), magnitude_(magnitude) {}
  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

class NonpositiveMetric : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class StepFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace solvflow
