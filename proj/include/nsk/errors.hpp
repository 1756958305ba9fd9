#pragma once

#include <stdexcept>
#include <string>

namespace nsk {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent grid/scheme/run configuration; detected before any compute.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a constitutive law or operator (e.g. rho <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Right-hand side violates the solvability condition of a singular elliptic problem.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

/// Iterative solve failed to reach its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, int iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Mixture state left the admissible set (density at or below the floor, non-finite values).
class StateError : public Error {
 public:
  StateError(const std::string& what, std::size_t node, double value)
      : Error(what), node_(node), value_(value) {}
  std::size_t node() const noexcept { return node_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t node_;
  double value_;
};

}  // namespace nsk
