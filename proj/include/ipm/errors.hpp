#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ipm {

/// Invalid or inconsistent configuration (bad keys, unsupported parameter
/// combinations, quadrature too weak for the requested basis, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Entropy evaluated outside its admissible interval.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Reading or writing an artifact failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed-form exact solution was requested outside its validity window.
class UnsupportedTime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The dual problem could not be solved: the moment vector left the
/// realizable set, or the optimizer stalled on an ill-conditioned problem.
class RealizabilityLost : public std::runtime_error {
 public:
  explicit RealizabilityLost(const std::string& reason,
                             std::optional<std::size_t> cell = std::nullopt,
                             std::optional<std::size_t> step = std::nullopt)
      : std::runtime_error(format(reason, cell, step)),
        reason_(reason),
        cell_(cell),
        step_(step) {}

  const std::string& reason() const { return reason_; }
  std::optional<std::size_t> cell() const { return cell_; }
  std::optional<std::size_t> step() const { return step_; }

  RealizabilityLost at(std::size_t cell, std::size_t step) const {
    return RealizabilityLost(reason_, cell, step);
  }

 private:
  static std::string format(const std::string& reason,
                            std::optional<std::size_t> cell,
                            std::optional<std::size_t> step) {
    std::string msg = "realizability lost: " + reason;
    if (cell) msg += " (cell " + std::to_string(*cell) + ")";
    if (step) msg += " (step " + std::to_string(*step) + ")";
    return msg;
  }

  std::string reason_;
  std::optional<std::size_t> cell_;
  std::optional<std::size_t> step_;
};

}  // namespace ipm
