#pragma once

#include <stdexcept>
#include <string>

namespace lpgsp {

/// Inputs violate a documented precondition or type invariant
/// (shape mismatches, asymmetric weights, out-of-range parameters, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A computation cannot proceed numerically: unstable filters, poles on the
/// evaluation contour, singular or under-determined systems.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed configuration or file schema (CLI layer).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lpgsp
