#pragma once

#include <stdexcept>
#include <string>

namespace espread {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad parameters, configuration, or usage. Maps to CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Matrix dimension incompatible with the requested bandwidth or grid.
class ConfigurationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Failure detected while computing. Maps to CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A spectral gap fell below the resolvable threshold.
class DegeneracyError : public NumericalError {
 public:
  DegeneracyError(int level_a, int level_b, double gap)
      : NumericalError("near-degenerate eigenvalue pair (" + std::to_string(level_a) + ", " +
                       std::to_string(level_b) + "), gap " + std::to_string(gap)),
        level_a(level_a),
        level_b(level_b),
        gap(gap) {}
  int level_a;
  int level_b;
  double gap;
};

/// Time propagation lost unitarity or failed to converge.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double t)
      : NumericalError(what + " at t = " + std::to_string(t)), time(t) {}
  double time;
};

/// Probability leaked to within the band of the matrix edge; results would be
/// corrupted by truncation. Enlarge N.
class EdgeGuardError : public NumericalError {
 public:
  EdgeGuardError(double t, double mass)
      : NumericalError("edge guard tripped at t = " + std::to_string(t) + " (boundary mass " +
                       std::to_string(mass) + "); enlarge N"),
        time(t),
        mass(mass) {}
  double time;
  double mass;
};

/// Function evaluated at a non-integrable or undefined point.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Integral does not converge for the requested parameters.
class DivergentIntegralError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace espread
