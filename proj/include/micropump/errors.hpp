#pragma once

#include <stdexcept>
#include <string>

namespace micropump {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (config syntax, unknown key, bad literal).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Structurally valid input with physically inadmissible values.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// An iterative solve failed to reach its tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& msg, double residual)
      : Error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

// A calibration target could not be met inside the allowed parameter box.
class CalibrationFailed : public Error {
 public:
  explicit CalibrationFailed(const std::string& msg) : Error(msg) {}
};

// A result was requested from a run that never reached cycle convergence.
class NotConverged : public Error {
 public:
  explicit NotConverged(const std::string& msg) : Error(msg) {}
};

}  // namespace micropump
