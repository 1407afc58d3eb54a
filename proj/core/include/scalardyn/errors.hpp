#pragma once

#include <stdexcept>
#include <string>

namespace scalardyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies on (or too close to) a singular surface of a background or
/// wavefunction: x+ = 0 for conformal masses, the light cone for c^2/x.x, or
/// a finite-difference stencil that would leave the declared domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// m^2(x) < 0 was sampled; energies would become complex.
class RealityError : public Error {
 public:
  using Error::Error;
};

/// The canonical four-momentum cannot be rebuilt from a state (p- = 0 in the
/// front form, p0 <= 0, ...).
class OnShellError : public Error {
 public:
  using Error::Error;
};

/// Adaptive step size fell below the configured floor.
class StepUnderflow : public Error {
 public:
  using Error::Error;
};

/// Special-function evaluation would overflow double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace scalardyn
