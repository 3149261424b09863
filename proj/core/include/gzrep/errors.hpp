#pragma once

#include <stdexcept>
#include <string>

namespace gzrep {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched N or hbar, index out of range, malformed options.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Shifted argument lands on coinciding same-level entries.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Gamma-function (or derived) pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation (z <= 0, ordering violated, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Hypergeometric parameters for which the two-term Legendre form degenerates.
class DegenerateParameterError : public Error {
 public:
  using Error::Error;
};

// Orbit point on the excluded set, or a singular corner matrix.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Contour radius does not enclose the required poles.
class ContourError : public Error {
 public:
  using Error::Error;
};

// Requested expansion exceeds the configured cost cap.
class CostGuardError : public Error {
 public:
  using Error::Error;
};

// Non-finite integrand sample.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gzrep
