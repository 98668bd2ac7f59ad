#pragma once

#include <stdexcept>
#include <string>

namespace terabridge {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Superconductor evaluated at or above its critical temperature.
class NormalStateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Photon energy at or above the pair-breaking threshold 2*gap.
class PairBreakingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Query outside a tabulated grid.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Invalid or incomplete user configuration. `field()` names the offending
/// entry (material name, config key, parameter path).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Material database could not be loaded.
class LoadError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Coupling rate of zero makes unit cooperativity unreachable.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stage law failed inside the solver bracket.
class SolverError : public std::runtime_error {
 public:
  SolverError(double temperature, const std::string& what)
      : std::runtime_error(what), temperature_(temperature) {}
  double temperature() const noexcept { return temperature_; }

 private:
  double temperature_;
};

}  // namespace terabridge
