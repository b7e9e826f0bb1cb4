#include "hilfer/picard.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "hilfer/analysis.hpp"
#include "hilfer/errors.hpp"
#include "hilfer/special_functions.hpp"

namespace hilfer {

namespace {

// Psi is increasing, so bisection on [0, b] is enough.
double psi_inverse(const PsiSpec& psi, double x) {
  double lo = 0.0, hi = psi.horizon();
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (psi.increment(mid, 0.0) < x)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::size_t upper_index(const std::vector<double>& grid, double t) {
  return static_cast<std::size_t>(std::upper_bound(grid.begin(), grid.end(), t) - grid.begin());
}

}  // namespace

std::vector<double> build_grid(const ImpulsiveDelayIVP& ivp, const GridSpec& spec, std::vector<NodeKind>* kinds) {
  if (spec.n < 1) throw DomainError("build_grid: need at least one panel");
  const double b = ivp.horizon();
  std::vector<double> t(spec.n + 1);
  const double xb = ivp.psi.increment(b, 0.0);
  for (std::size_t i = 0; i <= spec.n; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(spec.n);
    t[i] = spec.spacing == GridSpacing::uniform_t ? b * frac : psi_inverse(ivp.psi, xb * frac);
  }
  t.front() = 0.0;
  t.back() = b;

  std::vector<bool> claimed(t.size(), false);
  std::vector<double> inserted;
  for (const auto& imp : ivp.impulses) {
    const std::size_t hi = std::min(upper_index(t, imp.time), t.size() - 1);
    const std::size_t lo = hi == 0 ? 0 : hi - 1;
    const std::size_t near = std::abs(t[lo] - imp.time) <= std::abs(t[hi] - imp.time) ? lo : hi;
    if (near != 0 && near + 1 != t.size() && !claimed[near]) {
      t[near] = imp.time;
      claimed[near] = true;
    } else {
      inserted.push_back(imp.time);
    }
  }
  for (double ti : inserted) t.insert(std::upper_bound(t.begin(), t.end(), ti), ti);

  std::vector<double> out;
  std::vector<NodeKind> k;
  out.reserve(t.size() + ivp.impulses.size());
  std::size_t next_imp = 0;
  for (double ti : t) {
    if (next_imp < ivp.impulses.size() && ti == ivp.impulses[next_imp].time) {
      out.push_back(ti);
      k.push_back(NodeKind::impulse_left);
      out.push_back(ti);
      k.push_back(NodeKind::impulse_right);
      ++next_imp;
    } else {
      out.push_back(ti);
      k.push_back(NodeKind::regular);
    }
  }
  if (next_imp != ivp.impulses.size()) throw DomainError("build_grid: failed to place impulse times on the grid");
  if (kinds) *kinds = std::move(k);
  return out;
}

GridSolution initial_iterate(const ImpulsiveDelayIVP& ivp, const GridSpec& spec) {
  GridSolution s;
  s.weighted_u.grid = build_grid(ivp, spec, &s.kinds);
  s.weighted_u.rho = ivp.order.rho();
  s.weighted_u.psi = std::make_shared<const PsiSpec>(ivp.psi);
  const double w0 = ivp.u0_weighted / gamma(ivp.order.rho());
  const std::size_t n = s.weighted_u.grid.size();
  s.weighted_u.weighted_values.assign(n, w0);
  s.g_values.assign(n, 0.0);
  s.impulse_contributions.assign(n, 0.0);
  s.history = ivp.history;
  s.delay_bound = ivp.delay_bound;
  return s;
}

PicardOperator::PicardOperator(const ImpulsiveDelayIVP& ivp, const GridSolution& layout, PicardOptions options)
    : ivp_(ivp),
      options_(options),
      quad_(ivp.order.alpha(), ivp.psi, layout.grid(), options.scheme),
      inv_gamma_rho_(1.0 / gamma(ivp.order.rho())) {
  const double rho = ivp.order.rho();
  weight_.resize(layout.grid().size());
  for (std::size_t i = 0; i < weight_.size(); ++i) weight_[i] = weight_factor(ivp.psi, rho, layout.grid()[i]);
}

GridSolution PicardOperator::apply(const GridSolution& current) const {
  const auto& grid = current.grid();
  const auto& w = current.weighted();
  const std::size_t n = grid.size();
  if (n != quad_.size()) throw DomainError("apply_T: iterate grid does not match the operator grid");

  std::vector<double> g(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (weight_[i] == 0.0) continue;  // t = 0 with rho < 1: u(0) is not defined
    const double t = grid[i];
    const double u = w[i] / weight_[i];
    const double hd = ivp_.delay(t);
    double ud;
    if (hd == t)
      ud = u;
    else if (hd <= 0.0)
      ud = history_eval(ivp_, hd);
    else
      ud = solution_at(current, hd);
    try {
      g[i] = solve_implicit_g(ivp_, t, u, ud, options_.inner_tol, options_.inner_max_iter).g;
    } catch (const std::exception& e) {
      throw NodeError(std::string(e.what()) + " [node " + std::to_string(i) + "]", i);
    }
  }
  // g_u is bounded near 0 under (H1); take its value from the first interior node.
  if (weight_[0] == 0.0 && n > 1) g[0] = g[1];

  const auto integral = quad_.apply(g);

  GridSolution out;
  out.weighted_u.grid = grid;
  out.weighted_u.rho = current.rho();
  out.weighted_u.psi = current.weighted_u.psi;
  out.kinds = current.kinds;
  out.history = current.history;
  out.delay_bound = current.delay_bound;
  out.warnings = current.warnings;
  out.g_values = std::move(g);
  out.weighted_u.weighted_values.resize(n);
  out.impulse_contributions.resize(n);

  double acc = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (current.kinds[i] == NodeKind::impulse_right) {
      const double u_left = w[i - 1] / weight_[i - 1];
      acc += ivp_.impulses.at(k).map(u_left);
      ++k;
    }
    out.impulse_contributions[i] = acc;
    out.weighted_u.weighted_values[i] = (ivp_.u0_weighted + acc) * inv_gamma_rho_ + weight_[i] * integral[i];
  }
  return out;
}

GridSolution apply_T(const ImpulsiveDelayIVP& ivp, const GridSolution& current, PicardOptions options) {
  PicardOperator T(ivp, current, options);
  return T.apply(current);
}

double weighted_distance(const GridSolution& a, const GridSolution& b) {
  const auto& wa = a.weighted();
  const auto& wb = b.weighted();
  if (wa.size() != wb.size()) throw DomainError("weighted_distance: grids differ");
  double m = 0.0;
  for (std::size_t i = 0; i < wa.size(); ++i) m = std::max(m, std::abs(wa[i] - wb[i]));
  return m;
}

GridSolution picard_solve(const ImpulsiveDelayIVP& ivp, const GridSpec& grid, double tol, std::size_t max_sweeps,
                          PicardOptions options) {
  if (!(tol > 0.0)) throw DomainError("picard_solve: tol must be positive");
  GridSolution u = initial_iterate(ivp, grid);
  if (!ivp.lipschitz) {
    u.warnings.push_back("no Lipschitz data: contraction of T is not certified");
  } else {
    const auto& L = *ivp.lipschitz;
    const double c = contraction_constant(ivp.order, ivp.psi, ivp.horizon(), L.K, L.L_f, L.L_J);
    if (c >= 1.0) {
      std::ostringstream os;
      os.precision(6);
      os << "contraction constant L = " << c << " >= 1: convergence of the Picard iteration is not guaranteed";
      u.warnings.push_back(os.str());
    }
  }

  PicardOperator T(ivp, u, options);
  for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
    GridSolution next = T.apply(u);
    const double delta = weighted_distance(next, u);
    next.convergence = std::move(u.convergence);
    next.convergence.push_back(delta);
    u = std::move(next);
    if (!std::isfinite(delta)) break;
    if (delta <= tol) return u;
  }
  throw NonConvergenceError("picard_solve: no convergence within " + std::to_string(max_sweeps) + " sweeps",
                            u.convergence);
}

double weighted_at(const GridSolution& sol, double t) {
  const auto& grid = sol.grid();
  const auto& w = sol.weighted();
  if (!(t >= 0.0 && t <= grid.back())) throw DomainError("weighted_at: t outside [0, b]");
  const std::size_t hi = upper_index(grid, t);
  if (hi == grid.size()) return w.back();
  const std::size_t lo = hi - 1;
  if (grid[lo] == t) return w[lo];
  const double s = (t - grid[lo]) / (grid[hi] - grid[lo]);
  return w[lo] + s * (w[hi] - w[lo]);
}

double solution_at(const GridSolution& sol, double t) {
  if (!(t >= -sol.delay_bound && t <= sol.grid().back()))
    throw DomainError("solution_at: t outside [-r, b]");
  if (t <= 0.0) return sol.history(t);
  return weighted_at(sol, t) / weight_factor(sol.psi(), sol.rho(), t);
}

double solution_left_limit(const GridSolution& sol, double t) {
  if (t > 0.0 && t <= sol.grid().back()) {
    const auto& grid = sol.grid();
    const std::size_t hi = upper_index(grid, t);
    if (hi >= 2 && grid[hi - 1] == t && sol.kinds[hi - 1] == NodeKind::impulse_right)
      return sol.weighted()[hi - 2] / weight_factor(sol.psi(), sol.rho(), t);
  }
  return solution_at(sol, t);
}

void write_solution_csv(std::ostream& out, const GridSolution& sol) {
  out << "t,weighted_u,u,g,is_impulse_left,is_impulse_right\n";
  const auto& grid = sol.grid();
  const auto& w = sol.weighted();
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double wf = weight_factor(sol.psi(), sol.rho(), grid[i]);
    out << num(grid[i]) << ',' << num(w[i]) << ',';
    if (wf != 0.0) out << num(w[i] / wf);
    out << ',' << num(sol.g_values[i]) << ',' << (sol.kinds[i] == NodeKind::impulse_left ? 1 : 0) << ','
        << (sol.kinds[i] == NodeKind::impulse_right ? 1 : 0) << '\n';
  }
}

std::vector<SolutionRow> read_solution_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,weighted_u,u,g,is_impulse_left,is_impulse_right")
    throw DomainError("read_solution_csv: missing or unexpected header");
  std::vector<SolutionRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const auto c = line.find(',', start);
      f.push_back(line.substr(start, c - start));
      if (c == std::string::npos) break;
      start = c + 1;
    }
    if (f.size() != 6) throw DomainError("read_solution_csv: expected 6 fields on line " + std::to_string(lineno));
    auto num = [&](const std::string& s) {
      double v = 0.0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size())
        throw DomainError("read_solution_csv: bad number '" + s + "' on line " + std::to_string(lineno));
      return v;
    };
    SolutionRow r;
    r.t = num(f[0]);
    r.weighted_u = num(f[1]);
    r.has_u = !f[2].empty();
    if (r.has_u) r.u = num(f[2]);
    r.g = num(f[3]);
    r.impulse_left = f[4] == "1";
    r.impulse_right = f[5] == "1";
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hilfer
