#pragma once

#include <stdexcept>
#include <string>

namespace levitrap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed config text, unknown key, unknown unit token, bad CLI argument.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A scenario invariant does not hold.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The trap (or the feedback loop) has no steady state: damping at or below
// the critical level, or a feedback gain above its critical value.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, double stability_ratio, int axis = 0)
      : Error(what), stability_ratio_(stability_ratio), axis_(axis) {}
  // Gamma / Gamma_cr (or the equivalent denominator diagnostic).
  double stability_ratio() const { return stability_ratio_; }
  int axis() const { return axis_; }

 private:
  double stability_ratio_;
  int axis_;
};

// Iterative solver failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A stochastic run too short for the requested statistics.
class UndersampledError : public Error {
 public:
  using Error::Error;
};

}  // namespace levitrap
