#pragma once

#include <stdexcept>
#include <string>

namespace grover {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonSquare : public Error {
 public:
  using Error::Error;
};

// Gram-Schmidt residual fell below the degeneracy threshold.
class DegenerateSeed : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

// Requested iteration count is below the optimum for the target fraction.
class InfeasibleK : public Error {
 public:
  using Error::Error;
};

class NonIntegralM : public Error {
 public:
  using Error::Error;
};

// Resource caps. The CLI maps both to exit code 3.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class TooLargeForDense : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

}  // namespace grover
