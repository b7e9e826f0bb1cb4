#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hilfer {

struct LipschitzData {
  double K = 0.0;
  double L_f = 0.0;
  std::vector<double> L_J;
};

// Textual problem description, as read from a problem file or taken from the
// built-in catalog. Expressions are kept as source text; build_problem()
// compiles them.
struct ProblemConfig {
  std::string name;
  double alpha = 0.0;
  double beta = 0.0;

  std::string psi_kind = "identity";  // identity | log-shifted | power | tabulated
  double psi_shift = 1.0;             // log-shifted
  double psi_sigma = 1.0;             // power
  std::vector<double> psi_nodes, psi_values, psi_derivs;  // tabulated

  double b = 0.0;
  double r = 0.0;

  std::string history;  // phi(t) on [-r, 0]
  std::string rhs;      // f(t, u, u_delayed, w)
  std::string delay;    // h(t)

  struct ImpulseEntry {
    double time = 0.0;
    std::string map;  // J_k(u)
  };
  std::vector<ImpulseEntry> impulses;

  // Value of the fractional integral I^{1-rho;Psi} u at 0+, not u(0).
  double u0_weighted = 0.0;

  std::optional<LipschitzData> lipschitz;
};

/*
 * Problem file format (INI style, one key per line, ';' starts a comment line):
 *
 *   [problem]    name, catalog            catalog = <name> loads a built-in problem
 *                                         and may not be combined with other sections
 *   [order]      alpha, beta
 *   [psi]        kind, shift, sigma, nodes, values, derivs
 *   [domain]     b, r
 *   [history]    phi        expression in t
 *   [rhs]        f          expression in t, u, u_delayed, w, dpsi, rho, alpha, beta
 *   [delay]      h          expression in t
 *   [impulses]   time_1, map_1, time_2, map_2, ...
 *                           map_k is an expression in u, t, dpsi, rho, alpha, beta
 *                           (t = t_k, dpsi = Psi(t_k) - Psi(0))
 *   [initial]    u0_weighted
 *   [lipschitz]  K, L_f, L_J (comma separated, one per impulse)
 *
 * Numbers are plain decimals. Unknown sections or keys are rejected.
 */
ProblemConfig parse_problem_config(std::string_view text);
ProblemConfig load_problem_config(const std::filesystem::path& path);

// Serialises back to the file format above (17 significant digits).
std::string format_problem_config(const ProblemConfig& cfg);

// Built-in problems: "paper-ex-caputo", "paper-ex-rl", "linear-caputo".
ProblemConfig catalog_config(std::string_view name);
std::vector<std::string> catalog_names();

}  // namespace hilfer
