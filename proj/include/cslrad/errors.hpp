#pragma once

#include <stdexcept>
#include <string>

namespace cslrad {

/// Invalid input parameter; the message names the offending field.
class ValidationError : public std::invalid_argument {
public:
  ValidationError(std::string field, const std::string &msg)
      : std::invalid_argument(field + ": " + msg), field_(std::move(field)) {}
  const std::string &field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Evaluation requested outside the domain where a formula is valid
/// (resonance, runaway overflow, degenerate roots, pointwise white noise).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Numerical procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration; carries the dotted key path.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string key, const std::string &msg)
      : std::runtime_error(key.empty() ? msg : key + ": " + msg),
        key_(std::move(key)) {}
  const std::string &key() const noexcept { return key_; }

private:
  std::string key_;
};

} // namespace cslrad
