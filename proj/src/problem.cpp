#include "hilfer/problem.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hilfer/errors.hpp"
#include "hilfer/expression.hpp"

namespace hilfer {

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Expression compile(const std::string& field, const std::string& source, std::vector<std::string> vars) {
  if (source.empty()) throw ConfigError(field, "missing expression");
  try {
    return Expression::parse(source, std::move(vars));
  } catch (const ExpressionError& e) {
    throw ConfigError(field, e.what());
  }
}

PsiSpec build_psi(const ProblemConfig& cfg) {
  try {
    if (cfg.psi_kind == "identity") return PsiSpec::identity(cfg.b);
    if (cfg.psi_kind == "log-shifted") return PsiSpec::log_shifted(cfg.b, cfg.psi_shift);
    if (cfg.psi_kind == "power") return PsiSpec::power(cfg.b, cfg.psi_sigma);
    if (cfg.psi_kind == "tabulated") {
      auto psi = PsiSpec::tabulated(cfg.psi_nodes, cfg.psi_values, cfg.psi_derivs);
      if (psi.horizon() != cfg.b) throw ConfigError("psi.nodes", "last node must equal domain.b");
      return psi;
    }
  } catch (const DomainError& e) {
    throw ConfigError("psi", e.what());
  }
  throw ConfigError("psi.kind", "unknown kind '" + cfg.psi_kind + "'");
}

}  // namespace

void validate_problem(const ImpulsiveDelayIVP& ivp) {
  const double b = ivp.horizon();
  if (!(ivp.delay_bound >= 0.0) || !std::isfinite(ivp.delay_bound))
    throw ConfigError("domain.r", "delay bound must be nonnegative and finite");
  if (!ivp.rhs) throw ConfigError("rhs.f", "missing right-hand side");
  if (!ivp.delay) throw ConfigError("delay.h", "missing delay function");
  if (!ivp.history) throw ConfigError("history.phi", "missing history function");
  if (!std::isfinite(ivp.u0_weighted)) throw ConfigError("initial.u0_weighted", "must be finite");

  auto pv = validate_psi(ivp.psi, 256);
  if (!pv.pass) throw ConfigError("psi", pv.issues.empty() ? "validation failed" : pv.issues.front());

  constexpr int probes = 256;
  for (int i = 1; i <= probes; ++i) {
    const double t = b * i / probes;
    const double h = ivp.delay(t);
    if (!std::isfinite(h)) throw ConfigError("delay.h", "non-finite delay at t=" + fmt_num(t));
    if (h > t) throw ConfigError("delay.h", "h(t) > t at t=" + fmt_num(t));
    if (h < -ivp.delay_bound)
      throw ConfigError("delay.h", "h(t) < -r at t=" + fmt_num(t) + "; increase domain.r");
  }
  for (int i = 0; i <= probes; ++i) {
    const double t = -ivp.delay_bound * (probes - i) / probes;
    if (!std::isfinite(ivp.history(t))) throw ConfigError("history.phi", "non-finite at t=" + fmt_num(t));
  }

  for (std::size_t k = 0; k < ivp.impulses.size(); ++k) {
    const auto& imp = ivp.impulses[k];
    const std::string field = "impulses.time_" + std::to_string(k + 1);
    if (!(imp.time > 0.0 && imp.time < b))
      throw ConfigError(field, "impulse time " + fmt_num(imp.time) + " must lie strictly inside (0, b)");
    if (k > 0 && !(imp.time > ivp.impulses[k - 1].time))
      throw ConfigError(field, "impulse times must be strictly increasing");
    if (!imp.map) throw ConfigError("impulses.map_" + std::to_string(k + 1), "missing impulse map");
  }

  if (ivp.lipschitz) {
    const auto& L = *ivp.lipschitz;
    if (!(L.K > 0.0)) throw ConfigError("lipschitz.K", "must be positive");
    if (!(L.L_f > 0.0 && L.L_f < 1.0)) throw ConfigError("lipschitz.L_f", "must lie in (0, 1)");
    if (L.L_J.size() != ivp.impulses.size())
      throw ConfigError("lipschitz.L_J", "needs one constant per impulse (" +
                                             std::to_string(ivp.impulses.size()) + ")");
    for (double l : L.L_J)
      if (!(l > 0.0)) throw ConfigError("lipschitz.L_J", "constants must be positive");
  }
}

ImpulsiveDelayIVP build_problem(const ProblemConfig& cfg) {
  if (!(cfg.b > 0.0) || !std::isfinite(cfg.b)) throw ConfigError("domain.b", "must be positive and finite");

  ImpulsiveDelayIVP ivp;
  ivp.name = cfg.name;
  try {
    ivp.order = FractionalOrder(cfg.alpha, cfg.beta);
  } catch (const DomainError& e) {
    throw ConfigError("order", e.what());
  }
  ivp.psi = build_psi(cfg);
  ivp.delay_bound = cfg.r;
  ivp.u0_weighted = cfg.u0_weighted;
  ivp.lipschitz = cfg.lipschitz;

  const double alpha = ivp.order.alpha(), beta = ivp.order.beta(), rho = ivp.order.rho();
  const PsiSpec psi = ivp.psi;

  auto f = compile("rhs.f", cfg.rhs, {"t", "u", "u_delayed", "w", "dpsi", "rho", "alpha", "beta"});
  ivp.rhs = [f, psi, rho, alpha, beta](double t, double u, double ud, double w) {
    const double vals[] = {t, u, ud, w, psi.increment(t, 0.0), rho, alpha, beta};
    return f.eval(vals);
  };

  auto h = compile("delay.h", cfg.delay, {"t"});
  ivp.delay = [h](double t) { return h.eval(std::span<const double>(&t, 1)); };

  auto phi = compile("history.phi", cfg.history, {"t"});
  ivp.history = [phi](double t) { return phi.eval(std::span<const double>(&t, 1)); };

  for (std::size_t k = 0; k < cfg.impulses.size(); ++k) {
    const auto& e = cfg.impulses[k];
    const std::string field = "impulses.map_" + std::to_string(k + 1);
    auto J = compile(field, e.map, {"u", "t", "dpsi", "rho", "alpha", "beta"});
    if (!(e.time > 0.0 && e.time < cfg.b))
      throw ConfigError("impulses.time_" + std::to_string(k + 1),
                        "impulse time " + fmt_num(e.time) + " must lie strictly inside (0, b)");
    const double tk = e.time;
    const double dpsi = psi.increment(tk, 0.0);
    ivp.impulses.push_back({tk, [J, tk, dpsi, rho, alpha, beta](double u) {
                              const double vals[] = {u, tk, dpsi, rho, alpha, beta};
                              return J.eval(vals);
                            }});
  }

  validate_problem(ivp);
  return ivp;
}

double history_eval(const ImpulsiveDelayIVP& ivp, double t) {
  if (!(t >= -ivp.delay_bound && t <= 0.0))
    throw DomainError("history_eval: t=" + fmt_num(t) + " outside [-r, 0]");
  return ivp.history(t);
}

ImplicitSolution solve_implicit_g(const ImpulsiveDelayIVP& ivp, double t, double u, double u_delayed, double tol,
                                  std::size_t max_iter) {
  if (!(tol > 0.0)) throw DomainError("solve_implicit_g: tol must be positive");
  ImplicitSolution out;
  double g = ivp.rhs(t, u, u_delayed, 0.0);
  double prev_step = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    if (!std::isfinite(g)) throw FixedPointError("solve_implicit_g: non-finite iterate at t=" + fmt_num(t), g, it);
    const double next = ivp.rhs(t, u, u_delayed, g);
    const double step = std::abs(next - g);
    if (prev_step > 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(g)))
      out.max_ratio = std::max(out.max_ratio, step / prev_step);
    if (step <= tol) {
      out.g = g;
      out.iterations = it;
      out.residual = step;
      return out;
    }
    prev_step = step;
    g = next;
  }
  const double residual = std::abs(ivp.rhs(t, u, u_delayed, g) - g);
  throw FixedPointError("solve_implicit_g: no convergence within " + std::to_string(max_iter) +
                            " iterations at t=" + fmt_num(t) + " (residual " + fmt_num(residual) + ")",
                        residual, max_iter);
}

}  // namespace hilfer
