#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hilfer/config.hpp"
#include "hilfer/psi.hpp"

namespace hilfer {

using RhsFn = std::function<double(double t, double u, double u_delayed, double w)>;
using ScalarFn = std::function<double(double)>;

struct Impulse {
  double time = 0.0;
  ScalarFn map;  // J_k, applied to the left limit u(t_k-)
};

/*
 * Impulsive implicit Psi-Hilfer delay problem
 *
 *   D^{alpha,beta;Psi} u(t) = f(t, u(t), u(h(t)), D^{alpha,beta;Psi} u(t)),   t in (0,b] \ {t_k}
 *   jump of I^{1-rho;Psi} u at t_k = J_k(u(t_k-))
 *   I^{1-rho;Psi} u(0+) = u0_weighted
 *   u = phi on [-r, 0]
 *
 * The horizon b is psi.horizon().
 */
struct ImpulsiveDelayIVP {
  std::string name;
  FractionalOrder order{0.5, 1.0};
  PsiSpec psi = PsiSpec::identity(1.0);
  double delay_bound = 0.0;
  RhsFn rhs;
  ScalarFn delay;
  ScalarFn history;
  double u0_weighted = 0.0;
  std::vector<Impulse> impulses;
  std::optional<LipschitzData> lipschitz;

  double horizon() const noexcept { return psi.horizon(); }
};

// Checks every structural invariant; throws ConfigError naming the field.
// Psi validation uses 256 probes, the delay check h(t) <= t uses 256 probes of (0, b].
void validate_problem(const ImpulsiveDelayIVP& ivp);

// Compiles the expressions of cfg and validates the result.
ImpulsiveDelayIVP build_problem(const ProblemConfig& cfg);

double history_eval(const ImpulsiveDelayIVP& ivp, double t);

struct ImplicitSolution {
  double g = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  // Largest observed |g_{n+1} - g_n| / |g_n - g_{n-1}|; 0 when fewer than two steps.
  double max_ratio = 0.0;
};

/*
 * Solves g = f(t, u, u_delayed, g) by fixed-point iteration started from
 * g_0 = f(t, u, u_delayed, 0). Stops once a step changes g by at most tol, which
 * bounds the residual of the returned value by L_f * tol <= tol.
 */
ImplicitSolution solve_implicit_g(const ImpulsiveDelayIVP& ivp, double t, double u, double u_delayed,
                                  double tol = 1e-12, std::size_t max_iter = 200);

}  // namespace hilfer
