#pragma once

#include <stdexcept>
#include <string>

namespace gerstner {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the formula (k <= 0, b > b0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed textual input (CLI flags, key=value documents).
class ParseError : public Error {
public:
  using Error::Error;
};

/// A constructor was called with constants belonging to the other regime.
class RegimeMismatchError : public Error {
public:
  using Error::Error;
};

/// The dispersion relation has no real solution for the requested current.
class NoSolutionError : public Error {
public:
  using Error::Error;
};

/// A quantity that is undefined for the given parameters (drift for m = 0).
class UndefinedError : public Error {
public:
  using Error::Error;
};

/// A point on or above the free surface was passed where an interior point
/// is required.
class OutOfDomainError : public Error {
public:
  using Error::Error;
};

/// Vorticity evaluated on a surface label with b = 0.
class SingularityError : public Error {
public:
  SingularityError(const std::string& what, double signed_infinity)
      : Error(what), signed_infinity_(signed_infinity) {}

  /// +inf or -inf, the sign of the divergent quantity.
  double signed_infinity() const noexcept { return signed_infinity_; }

private:
  double signed_infinity_;
};

/// An iterative solver failed to converge. Carries the best iterate found.
class NumericError : public Error {
public:
  NumericError(const std::string& what, double best_a, double best_b,
               double residual)
      : Error(what), best_a_(best_a), best_b_(best_b), residual_(residual) {}

  double best_a() const noexcept { return best_a_; }
  double best_b() const noexcept { return best_b_; }
  double residual() const noexcept { return residual_; }

private:
  double best_a_;
  double best_b_;
  double residual_;
};

} // namespace gerstner
