#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orthoglide {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration errors (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class MissingKey : public ConfigError {
 public:
  explicit MissingKey(std::string key)
      : ConfigError("missing config key: " + key), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class UnitParseError : public ConfigError {
 public:
  UnitParseError(const std::string& key, const std::string& text)
      : ConfigError("cannot parse value of '" + key + "': '" + text +
                    "' (values are bare SI reals, no unit suffixes)") {}
};

class InvariantViolation : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Model/trace errors (CLI exit code 1).
class ModelError : public Error {
 public:
  using Error::Error;
};

class SpecMismatch : public ModelError {
 public:
  using ModelError::ModelError;
};

class TooFewSamples : public ModelError {
 public:
  TooFewSamples(std::size_t have, std::size_t need)
      : ModelError("too few samples: " + std::to_string(have) + " < " + std::to_string(need)) {}
};

class MisalignedTraces : public ModelError {
 public:
  using ModelError::ModelError;
};

class EmptyTrace : public ModelError {
 public:
  EmptyTrace() : ModelError("empty trace") {}
};

class UnassignedActuator : public ModelError {
 public:
  explicit UnassignedActuator(const std::string& actuator)
      : ModelError("no motor assigned to actuator " + actuator) {}
};

/// Point p leaves the reachable region of one leg (IK radicand <= 0).
class OutOfWorkspace : public ModelError {
 public:
  explicit OutOfWorkspace(int axis, long sample = -1)
      : ModelError(describe(axis, sample)), axis_(axis), sample_(sample) {}
  int axis() const { return axis_; }
  long sample() const { return sample_; }

 private:
  static std::string describe(int axis, long sample) {
    static constexpr const char* names[] = {"x", "y", "z"};
    std::string s = std::string("out of workspace on axis ") + ((axis >= 0 && axis < 3) ? names[axis] : "?");
    if (sample >= 0) s += " at sample " + std::to_string(sample);
    return s;
  }
  int axis_;
  long sample_;
};

class NoConvergence : public ModelError {
 public:
  explicit NoConvergence(int iterations, double residual)
      : ModelError("forward kinematics did not converge after " + std::to_string(iterations) +
                   " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

class WrongAssemblyMode : public ModelError {
 public:
  explicit WrongAssemblyMode(int axis)
      : ModelError("forward kinematics converged to the p_i > rho_i branch on axis " +
                   std::to_string(axis)),
        axis_(axis) {}
  int axis() const { return axis_; }

 private:
  int axis_;
};

class GimbalSingularity : public ModelError {
 public:
  explicit GimbalSingularity(long sample = -1)
      : ModelError(sample >= 0 ? "tool axis aligned with wrist axis 1 at sample " + std::to_string(sample)
                               : std::string("tool axis aligned with wrist axis 1")),
        sample_(sample) {}
  long sample() const { return sample_; }

 private:
  long sample_;
};

class NearSingularity : public ModelError {
 public:
  explicit NearSingularity(long sample = -1)
      : ModelError(sample >= 0 ? "ill-conditioned translation Jacobian at sample " + std::to_string(sample)
                               : std::string("ill-conditioned translation Jacobian")) {}
};

// Energy audit failure (CLI exit code 3).
class AuditFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace orthoglide
