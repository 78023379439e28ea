#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A base point lies outside the model's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix or coefficient vector is not an element of the structure algebra.
class RepresentationError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference estimates at h and h/2 disagree, or an integrator step underflowed.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Rank drop or ill-conditioning where a regular leaf was required.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class CentralityError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a geometric type (e.g. metric) the model does not have.
class TypeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace cartan
