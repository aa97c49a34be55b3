#pragma once

#include <stdexcept>
#include <string>

namespace qg {

/// Non-finite values encountered while advancing a simulation.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(const std::string& what, double time)
      : std::runtime_error(what + " at t=" + std::to_string(time)), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Requested step violates the advective CFL guard.
class CflError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A pipeline stage was invoked before its inputs exist.
class MissingPrerequisite : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed configuration or file content.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qg
