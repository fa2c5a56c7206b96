#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace airnet {

/// Invalid configuration or schema; maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File or network I/O failure; maps to CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conjugate gradient hit its iteration cap; maps to CLI exit code 4.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

  std::size_t iterations() const noexcept { return iterations_; }
  /// Relative residual ||Ax - b|| / ||b|| when the solver gave up.
  double residual() const noexcept { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

}  // namespace airnet
