#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hilfer/psi.hpp"

namespace hilfer {

/*
 * Product integration of the Psi-Riemann-Liouville integral
 *
 *   I^{alpha;Psi} g (t_j) = 1/Gamma(alpha) int_0^{t_j} Psi'(s) (Psi(t_j) - Psi(s))^(alpha-1) g(s) ds
 *                         = 1/Gamma(alpha) int_0^{X_j} (X_j - x)^(alpha-1) g(x) dx,   x = Psi(s) - Psi(0).
 *
 * g is replaced on each panel [x_{i-1}, x_i] by
 *   product_rectangle  the constant (g_{i-1} + g_i) / 2
 *   product_trapezoid  the linear interpolant of g_{i-1}, g_i
 * and the kernel moments are integrated in closed form, so the singularity at
 * x = X_j is treated exactly. Rectangle weights are nonnegative.
 *
 * Grids must start at 0 and be nondecreasing. A repeated time is a panel of zero
 * width; the solver uses it to hold left and right limits at an impulse.
 */
enum class QuadratureScheme { product_rectangle, product_trapezoid };

// Declares that on the first panel g(s) = coefficient * (Psi(s) - Psi(0))^exponent
// exactly, exponent > -1. That panel is then integrated analytically and g[0]
// is not read. Intended for integrands singular at 0.
struct SingularStart {
  double coefficient = 1.0;
  double exponent = 0.0;
};

double frac_integral_at(double alpha, const PsiSpec& psi, std::span<const double> grid,
                        std::span<const double> g, std::size_t j, QuadratureScheme scheme,
                        std::optional<SingularStart> singular = std::nullopt);

std::vector<double> frac_integral_profile(double alpha, const PsiSpec& psi, std::span<const double> grid,
                                          std::span<const double> g, QuadratureScheme scheme,
                                          std::optional<SingularStart> singular = std::nullopt);

// Quadrature weights for every node of a fixed grid, computed once and applied
// to many integrands (one per Picard sweep).
class ProductQuadrature {
 public:
  ProductQuadrature(double alpha, const PsiSpec& psi, std::span<const double> grid, QuadratureScheme scheme);

  std::size_t size() const noexcept { return n_; }

  // Weights of node j over samples 0..j, already divided by Gamma(alpha).
  std::span<const double> weights(std::size_t j) const;

  double at(std::span<const double> g, std::size_t j) const;
  std::vector<double> apply(std::span<const double> g) const;

 private:
  std::size_t n_;
  std::vector<double> w_;  // row j starts at j*(j+1)/2
};

}  // namespace hilfer
