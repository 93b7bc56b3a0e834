#ifndef WEIERKIT_ERRORS_HPP
#define WEIERKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "weierkit/complex.hpp"

namespace weierkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iteration or quadrature failed to reach its tolerance.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or within tolerance of) a pole. `location()` is the
/// offending point reduced to a representative of its lattice class.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, Complex location) : Error(what), location_(location) {}
  Complex location() const noexcept { return location_; }

 private:
  Complex location_;
};

/// Half-period pair inconsistent with the lattice geometry of its region.
class ConventionError : public Error {
 public:
  using Error::Error;
};

/// Malformed command line or report request.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace weierkit

#endif  // WEIERKIT_ERRORS_HPP
