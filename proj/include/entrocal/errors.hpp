#pragma once

#include <stdexcept>
#include <string>

namespace entrocal {

// Base class for all library errors. CLI maps these to exit code 2
// (numerical failure) unless noted otherwise.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the weight/dual domain of an entropy.
struct DomainError : Error {
  using Error::Error;
};

// Link whose 1/pi is not increasing on the usable domain.
struct InvalidLink : Error {
  using Error::Error;
};

// Newton iteration hit max_iter without meeting the residual tolerance.
struct NonConvergence : Error {
  using Error::Error;
};

// Dual Hessian numerically rank-deficient with ridge = 0.
struct SingularHessian : Error {
  using Error::Error;
};

// Weighted Gram matrix unusable even through the pseudo-inverse path.
struct SingularGram : Error {
  using Error::Error;
};

// No dual point can satisfy the calibration constraint.
struct Infeasible : Error {
  using Error::Error;
};

// No constant direction a with design*a = 1 found.
struct MissingIntercept : Error {
  using Error::Error;
};

// Every candidate trim bound failed during cross-validation.
struct AllInfeasible : Error {
  using Error::Error;
};

// Neither population covariates nor a reference sample can evaluate the
// debiasing total.
struct DebiasTotalUnavailable : Error {
  using Error::Error;
};

// Bad scenario/config input. CLI maps to exit code 1.
struct ConfigError : Error {
  using Error::Error;
};

// Required CSV column absent. CLI maps to exit code 1.
struct MissingColumn : Error {
  using Error::Error;
};

// Reference design weights must be strictly positive.
struct NonpositiveWeight : Error {
  using Error::Error;
};

}  // namespace entrocal
