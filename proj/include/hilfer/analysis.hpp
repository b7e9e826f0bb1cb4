#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hilfer/picard.hpp"
#include "hilfer/problem.hpp"
#include "hilfer/psi.hpp"

namespace hilfer {

// L = sum_k L_Jk / Gamma(rho) + 2 K (Psi(b) - Psi(0))^(1-rho+alpha) / ((1 - L_f) Gamma(alpha + 1))
double contraction_constant(const FractionalOrder& order, const PsiSpec& psi, double b, double K, double L_f,
                            std::span<const double> L_J);

// Piecewise-linear samples on a grid.
struct GridSamples {
  std::vector<double> grid;
  std::vector<double> values;

  double at(double t) const;
};

/*
 * Impulsive Psi-Gronwall bound: if
 *   U(t) <= V(t) + g(t) int_0^t Psi'(s)(Psi(t)-Psi(s))^(alpha-1) U(s) ds + sum_{t_k < t} beta_k U(t_k-)
 * then
 *   U(t) <= V(t) prod_{t_i < t} {1 + beta_i E_alpha(g(t) Gamma(alpha) X_i^alpha)} E_alpha(g(t) Gamma(alpha) X_t^alpha)
 * with X_s = Psi(s) - Psi(0). The bound is meaningful for nondecreasing V >= 0 and g >= 0.
 */
double gronwall_bound(const GridSamples& V, const GridSamples& g_coeff, std::span<const double> beta_k,
                      std::span<const double> impulse_times, double alpha, const PsiSpec& psi, double t);

enum class ZetaVariant { derived, as_stated };

std::string to_string(ZetaVariant z);

struct StabilityCertificate {
  double L_contraction = 0.0;
  double zeta_derived = 0.0;    // includes K
  double zeta_as_stated = 0.0;  // 2 (Psi(b)-Psi(0))^(1-rho) / (1 - L_f)
  double C_p_E_alpha = 0.0;
  double C_f = 0.0;             // C_p_E_alpha * E_alpha(zeta (Psi(b)-Psi(0))^alpha), selected zeta
  ZetaVariant zeta_variant = ZetaVariant::derived;
  int m_convention = 0;         // m = p, the number of impulses

  // (H1)/(H2) cannot be checked from data; these echo the supplied constants.
  double K = 0.0;
  double L_f = 0.0;
  std::vector<double> L_J;
  bool h1_constants_admissible = false;  // K > 0 and 0 < L_f < 1
  bool h2_constants_admissible = false;  // every L_Jk > 0

  bool contractive() const noexcept { return L_contraction < 1.0; }
  double zeta() const noexcept { return zeta_variant == ZetaVariant::derived ? zeta_derived : zeta_as_stated; }
};

StabilityCertificate stability_constants(const FractionalOrder& order, const PsiSpec& psi, double b, double K,
                                         double L_f, std::span<const double> L_J, std::size_t p,
                                         ZetaVariant variant = ZetaVariant::derived);

// Certificate from a problem's own Lipschitz data; ConfigError if it has none.
StabilityCertificate certify(const ImpulsiveDelayIVP& ivp, ZetaVariant variant = ZetaVariant::derived);

enum class PerturbationShape { constant_one, sinusoidal };

struct PerturbationSpec {
  double epsilon = 1e-3;
  PerturbationShape shape = PerturbationShape::constant_one;
  double frequency = 1.0;   // sinusoidal: eta(t) = sin(2 pi frequency t)
  std::vector<double> xi;   // impulse perturbation signs; empty means all 1

  double eta(double t) const;
  void validate(std::size_t impulse_count) const;
};

// v solves f + E(t), J_k + eps xi_k with E(t) = eps eta(t) E_alpha((Psi(t)-Psi(0))^alpha).
ImpulsiveDelayIVP perturbed_problem(const ImpulsiveDelayIVP& ivp, const PerturbationSpec& pert);

struct UhmlReport {
  double epsilon = 0.0;
  ZetaVariant zeta_variant = ZetaVariant::derived;
  double max_ratio = 0.0;  // for zeta_variant
  double argmax_time = 0.0;
  bool pass = false;

  double max_ratio_derived = 0.0;
  double argmax_time_derived = 0.0;
  double max_ratio_as_stated = 0.0;
  double argmax_time_as_stated = 0.0;

  double max_weighted_deviation = 0.0;
  double ulam_hyers_bound = 0.0;  // eps * C_f
  bool ulam_hyers_pass = false;

  StabilityCertificate certificate;
  std::size_t sweeps_exact = 0;
  std::size_t sweeps_perturbed = 0;
};

/*
 * Solves the exact and perturbed problems on the same grid and compares the
 * weighted deviation with eps C_p E_alpha(zeta (Psi(t)-Psi(0))^alpha) node by
 * node. Refuses (DomainError) when the certificate is not contractive.
 */
UhmlReport uhml_verify(const ImpulsiveDelayIVP& ivp, const PerturbationSpec& pert, const GridSpec& grid,
                       double tol = 1e-12, ZetaVariant variant = ZetaVariant::derived, PicardOptions options = {});

// key=value lines: epsilon, zeta_variant, max_ratio, argmax_time, pass, then the extras.
void write_uhml_report(std::ostream& out, const UhmlReport& r);

}  // namespace hilfer
