#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hilfer {

enum class PsiKind { identity, log_shifted, power, tabulated };

std::string to_string(PsiKind kind);

/*
 * The increasing weight function Psi on [0, b] together with its derivative.
 *
 *   identity      Psi(t) = t
 *   log_shifted   Psi(t) = log(t + c),  c > 0      (Hadamard-type, c = 1 by default)
 *   power         Psi(t) = t^sigma,     sigma > 0  (Katugampola-type)
 *   tabulated     cubic Hermite interpolant of user supplied (t_i, Psi_i, Psi'_i)
 *
 * Instances are immutable and cheap to copy.
 */
class PsiSpec {
 public:
  static PsiSpec identity(double b);
  static PsiSpec log_shifted(double b, double shift = 1.0);
  static PsiSpec power(double b, double sigma);
  static PsiSpec tabulated(std::vector<double> nodes, std::vector<double> values,
                           std::vector<double> derivs);

  PsiKind kind() const noexcept { return kind_; }
  double horizon() const noexcept { return b_; }
  // shift for log_shifted, sigma for power, 0 otherwise
  double parameter() const noexcept { return param_; }

  double eval(double t) const;
  double deriv(double t) const;

  // Psi(t) - Psi(s), computed without going through the absolute values where
  // that loses digits.
  double increment(double t, double s) const;

  // Tabulation data; empty unless kind() == tabulated.
  std::span<const double> table_nodes() const;
  std::span<const double> table_values() const;
  std::span<const double> table_derivs() const;

 private:
  struct Table {
    std::vector<double> t, v, d;
  };

  PsiSpec(PsiKind kind, double b, double param, std::shared_ptr<const Table> table);

  void check_domain(double t) const;
  std::size_t segment(double t) const;

  PsiKind kind_;
  double b_;
  double param_;
  std::shared_ptr<const Table> table_;
};

// Hilfer order alpha in (0,1), type beta in [0,1]; rho = alpha + beta - alpha*beta.
class FractionalOrder {
 public:
  FractionalOrder(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double rho() const noexcept { return alpha_ + beta_ - alpha_ * beta_; }

 private:
  double alpha_;
  double beta_;
};

/*
 * Grid function stored in weighted form w(t) = (Psi(t) - Psi(0))^(1-rho) u(t).
 * The grid starts at 0 and ends at b. A time may appear twice in a row, in which
 * case the two entries are the left and right limits at an impulse.
 */
struct WeightedGridFunction {
  std::vector<double> grid;
  std::vector<double> weighted_values;
  double rho = 1.0;
  std::shared_ptr<const PsiSpec> psi;

  // Throws DomainError if the invariants above do not hold.
  void validate() const;
};

double psi_increment(const PsiSpec& psi, double t, double s);

// Psi'(s) (Psi(t) - Psi(s))^(alpha-1), for 0 <= s < t <= b.
double kernel(const PsiSpec& psi, double alpha, double t, double s);

// (Psi(t) - Psi(0))^(rho-1) / Gamma(rho)
double rho_weight(const PsiSpec& psi, double rho, double t);

// (Psi(t) - Psi(0))^(1-rho); 1 when rho == 1, including at t == 0.
double weight_factor(const PsiSpec& psi, double rho, double t);

double weighted_norm(const WeightedGridFunction& u);
double weighted_norm(std::span<const double> weighted_values);

struct PsiValidation {
  bool pass = false;
  bool monotone = true;
  bool positive_derivative = true;
  bool derivative_consistent = true;
  double max_derivative_rel_error = 0.0;
  std::vector<std::string> issues;
};

// Probes Psi and Psi' at probe_count uniformly spaced points of [0, b].
PsiValidation validate_psi(const PsiSpec& psi, std::size_t probe_count);

}  // namespace hilfer
