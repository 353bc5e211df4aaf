#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dhc {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario configuration is malformed or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Drift coefficients do not satisfy b1 * a2^2 == b2 * a1^2, so no single
/// substitution exponent exists.
class ProportionalityViolation : public Error {
 public:
  using Error::Error;
};

/// Initial history disagrees with the boundary traces (or the target state
/// disagrees with the boundary values at the horizon).
class CompatibilityViolation : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance within the
/// maximum refinement depth.
class QuadratureNonConvergence : public Error {
 public:
  using Error::Error;
};

/// A factor exceeded floating-point range; mode() identifies the offending
/// mode when known (0 otherwise).
class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what, int mode = 0)
      : Error(what), mode_(mode) {}
  int mode() const { return mode_; }

 private:
  int mode_;
};

/// The moment equation for the given mode is numerically unsolvable at the
/// requested horizon.
class SingularMode : public Error {
 public:
  SingularMode(const std::string& what, int mode) : Error(what), mode_(mode) {}
  int mode() const { return mode_; }

 private:
  int mode_;
};

/// The mode's control coefficient overflows; the mode is practically
/// uncontrollable at this precision.
class ControlBlowup : public Error {
 public:
  ControlBlowup(const std::string& what, int mode) : Error(what), mode_(mode) {}
  int mode() const { return mode_; }

 private:
  int mode_;
};

/// A control operation was requested on data without a target state.
class MissingTarget : public Error {
 public:
  using Error::Error;
};

/// The finite-difference march diverged.
class UnstableRun : public Error {
 public:
  using Error::Error;
};

/// Expression text could not be parsed; offset() is the byte position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// An identifier outside the declared variable/constant/function sets.
class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Expression evaluation reached a variable with no bound value.
class UnboundVariable : public Error {
 public:
  using Error::Error;
};

/// Real-valued arithmetic left its domain (division by zero, sqrt of a
/// negative, negative base with fractional exponent).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace dhc
