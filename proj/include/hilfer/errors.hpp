#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hilfer {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Evaluation exactly at an integrable singularity (kernel at s == t, the
// rho-weight at t == 0 with rho < 1).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Series truncation did not settle within the configured term budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_partial_sum, std::size_t terms)
      : std::runtime_error(what), last_partial_sum_(last_partial_sum), terms_(terms) {}

  double last_partial_sum() const noexcept { return last_partial_sum_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  double last_partial_sum_;
  std::size_t terms_;
};

// The pointwise implicit relation g = f(t, u, u_delayed, g) failed to converge.
class FixedPointError : public std::runtime_error {
 public:
  FixedPointError(const std::string& what, double residual, std::size_t iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

// Picard sweeps exhausted without reaching the tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> deltas)
      : std::runtime_error(what), deltas_(std::move(deltas)) {}

  const std::vector<double>& deltas() const noexcept { return deltas_; }

 private:
  std::vector<double> deltas_;
};

// Failure inside a grid sweep; carries the node where it happened.
class NodeError : public std::runtime_error {
 public:
  NodeError(const std::string& what, std::size_t node)
      : std::runtime_error(what), node_(node) {}

  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

// Invalid problem description. field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace hilfer
