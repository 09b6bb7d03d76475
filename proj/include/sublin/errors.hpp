#pragma once

#include <stdexcept>
#include <string>

namespace sublin {

// Every library failure derives from Error so front-ends can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point lies outside the domain it was used with.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Bad argument value (negative scale, q outside (0,1), empty support, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// The requested operation is not supported for this representation,
// e.g. an L^p(dx) norm over a scattered point set.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A hypothesis of the existence theory is violated (p <= n/(n-2), ...).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Operation called on an object in the wrong state (non-converged trace).
class StateError : public Error {
 public:
  using Error::Error;
};

// An integrand produced NaN.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Wrong measure kind for the operation (atomic input to a density check).
class TypeError : public Error {
 public:
  using Error::Error;
};

}  // namespace sublin
