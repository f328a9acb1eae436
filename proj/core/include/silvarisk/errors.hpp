#pragma once

#include <stdexcept>
#include <string>

namespace silvarisk {

// Invalid model parameters (negative rates, nonpositive rotation age, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a function, e.g. an age beyond the rotation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Root/target outside the attainable range of a calibration.
class CalibrationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature non-convergence, divergent integrals and similar failures.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid configuration document. The message names the JSON path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, std::string message)
      : std::runtime_error(path + ": " + message),
        path_(std::move(path)),
        message_(std::move(message)) {}

  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string path_;
  std::string message_;
};

}  // namespace silvarisk
