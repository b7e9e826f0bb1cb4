#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hilfer/frac_integral.hpp"
#include "hilfer/problem.hpp"
#include "hilfer/psi.hpp"

namespace hilfer {

enum class GridSpacing { uniform_t, uniform_psi };

struct GridSpec {
  std::size_t n = 256;  // number of panels before impulse times are added
  GridSpacing spacing = GridSpacing::uniform_t;
};

enum class NodeKind : unsigned char { regular, impulse_left, impulse_right };

struct PicardOptions {
  QuadratureScheme scheme = QuadratureScheme::product_trapezoid;
  double inner_tol = 1e-14;
  std::size_t inner_max_iter = 200;
};

/*
 * Discrete solution on 0 = tau_0 < ... < tau_N = b. Every impulse time is a
 * node and appears twice: first as the left limit, then as the right limit.
 * All values are stored in weighted form (Psi(t) - Psi(0))^(1-rho) u(t).
 */
struct GridSolution {
  WeightedGridFunction weighted_u;
  std::vector<NodeKind> kinds;
  std::vector<double> g_values;
  // sum of J_k(u(t_k-)) over impulses already passed; a right-limit slot
  // includes its own impulse
  std::vector<double> impulse_contributions;
  // weighted sup-norm change of each Picard sweep
  std::vector<double> convergence;
  std::vector<std::string> warnings;

  ScalarFn history;
  double delay_bound = 0.0;

  const std::vector<double>& grid() const noexcept { return weighted_u.grid; }
  const std::vector<double>& weighted() const noexcept { return weighted_u.weighted_values; }
  double rho() const noexcept { return weighted_u.rho; }
  const PsiSpec& psi() const { return *weighted_u.psi; }
};

// Grid with impulse times snapped onto the nearest interior node (or inserted
// when no free interior node is available) and then duplicated.
std::vector<double> build_grid(const ImpulsiveDelayIVP& ivp, const GridSpec& spec, std::vector<NodeKind>* kinds);

// The initial Picard iterate: weighted value u0/Gamma(rho) everywhere.
GridSolution initial_iterate(const ImpulsiveDelayIVP& ivp, const GridSpec& spec);

/*
 * The solution operator
 *   T u(t) = R(t,0) (u0 + sum_{t_k < t} J_k(u(t_k-))) + I^{alpha;Psi} g_u(t),
 *   g_u(t) = f(t, u(t), u(h(t)), g_u(t)),
 * evaluated on the grid of a given iterate. Holds the quadrature weights so
 * repeated application costs one matrix-vector product per sweep. The problem
 * must outlive the operator.
 */
class PicardOperator {
 public:
  PicardOperator(const ImpulsiveDelayIVP& ivp, const GridSolution& layout, PicardOptions options = {});

  GridSolution apply(const GridSolution& current) const;

 private:
  const ImpulsiveDelayIVP& ivp_;
  PicardOptions options_;
  ProductQuadrature quad_;
  std::vector<double> weight_;  // (Psi(t_i) - Psi(0))^(1-rho)
  double inv_gamma_rho_;
};

GridSolution apply_T(const ImpulsiveDelayIVP& ivp, const GridSolution& current, PicardOptions options = {});

// Iterates u <- T(u) from initial_iterate() until the weighted sup-norm change
// is at most tol. Records a warning in GridSolution::warnings when the contraction
// constant of the problem's Lipschitz data is >= 1 or unknown.
GridSolution picard_solve(const ImpulsiveDelayIVP& ivp, const GridSpec& grid, double tol = 1e-12,
                          std::size_t max_sweeps = 200, PicardOptions options = {});

// Weighted sup-norm distance between two solutions on the same grid.
double weighted_distance(const GridSolution& a, const GridSolution& b);

// u(t) for t in [-r, b]: history on [-r, 0], otherwise linear interpolation of the
// weighted values, unweighted at t. At an impulse time this is the right limit.
double solution_at(const GridSolution& sol, double t);
double solution_left_limit(const GridSolution& sol, double t);

// Weighted value at t in (0, b] (no unweighting), right limit at impulses.
double weighted_at(const GridSolution& sol, double t);

// CSV export: t, weighted_u, u, g, is_impulse_left, is_impulse_right, 17 significant digits.
// u is left blank at t = 0 when rho < 1.
void write_solution_csv(std::ostream& out, const GridSolution& sol);

struct SolutionRow {
  double t = 0.0;
  double weighted_u = 0.0;
  bool has_u = false;
  double u = 0.0;
  double g = 0.0;
  bool impulse_left = false;
  bool impulse_right = false;
};

std::vector<SolutionRow> read_solution_csv(std::istream& in);

}  // namespace hilfer
