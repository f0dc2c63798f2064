#pragma once

#include <stdexcept>
#include <string>

namespace plateau {

// Argument outside the mathematical domain of an operation (k out of range,
// u <= 0, sigma outside (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical kernel failed (eigen-solver, linear solve).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A routine was called on input violating its documented precondition,
// e.g. a curvature vector outside the Garding cone.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Solver state became invalid (non-positive heights); the caller must damp.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Damped Newton could not make progress.
class StagnationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range run configuration. `path` is the JSON field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace plateau
