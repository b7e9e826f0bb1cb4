#include "hilfer/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hilfer/config.hpp"
#include "hilfer/errors.hpp"
#include "hilfer/picard.hpp"
#include "hilfer/problem.hpp"

namespace hilfer::cli {

namespace {

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dp4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + full(v[i]);
  return s + "]";
}

ImpulsiveDelayIVP load(const RunManifest& m) {
  if (!m.problem.empty()) return build_problem(catalog_config(m.problem));
  return build_problem(load_problem_config(m.config_path));
}

PicardOptions options_for(const RunManifest& m) {
  PicardOptions o;
  o.scheme = m.scheme;
  return o;
}

void open_output(const RunManifest& m) {
  std::error_code ec;
  std::filesystem::create_directories(m.output_dir, ec);
  if (ec) throw ConfigError("--out", "cannot create '" + m.output_dir.string() + "': " + ec.message());
}

std::ofstream open_file(const RunManifest& m, const std::string& name) {
  std::ofstream f(m.output_dir / name, std::ios::binary);
  if (!f) throw ConfigError("--out", "cannot write '" + (m.output_dir / name).string() + "'");
  return f;
}

double end_value(const GridSolution& sol) { return solution_at(sol, sol.grid().back()); }

int cmd_solve(const RunManifest& m, std::ostream& out) {
  const auto ivp = load(m);
  const auto sol = picard_solve(ivp, GridSpec{m.grid_n}, m.tol, 200, options_for(m));
  open_output(m);
  {
    auto f = open_file(m, "solution.csv");
    write_solution_csv(f, sol);
  }
  {
    auto f = open_file(m, "convergence.log");
    f << "# problem " << ivp.name << "\n# grid_n " << m.grid_n << "\n# tol " << full(m.tol) << "\n# scheme "
      << (m.scheme == QuadratureScheme::product_rectangle ? "rect" : "trap") << "\n# seed " << m.seed << "\n";
    for (const auto& w : sol.warnings) f << "# warning: " << w << "\n";
    f << "sweep,delta\n";
    for (std::size_t i = 0; i < sol.convergence.size(); ++i) f << i + 1 << ',' << full(sol.convergence[i]) << '\n';
  }
  for (const auto& w : sol.warnings) out << "warning: " << w << '\n';
  out << "solved " << ivp.name << ": nodes=" << sol.grid().size() << " sweeps=" << sol.convergence.size()
      << " u(b)=" << full(end_value(sol)) << '\n';
  out << "wrote " << (m.output_dir / "solution.csv").string() << " and "
      << (m.output_dir / "convergence.log").string() << '\n';
  return ok;
}

int cmd_check(const RunManifest& m, std::ostream& out) {
  const auto ivp = load(m);
  const auto c = certify(ivp, m.zeta);
  out << "problem: " << ivp.name << '\n';
  out << "alpha = " << full(ivp.order.alpha()) << ", beta = " << full(ivp.order.beta())
      << ", rho = " << full(ivp.order.rho()) << '\n';
  out << "(H1) K = " << full(c.K) << ", L_f = " << full(c.L_f) << " (user-asserted) "
      << (c.h1_constants_admissible ? "admissible" : "NOT admissible") << '\n';
  out << "(H2) L_J = " << list(c.L_J) << " (user-asserted) "
      << (c.h2_constants_admissible ? "admissible" : "NOT admissible") << '\n';
  out << "(H3) L = " << dp4(c.L_contraction) << " (" << full(c.L_contraction) << ") "
      << (c.contractive() ? "CONTRACTIVE" : "NOT CONTRACTIVE") << '\n';
  return c.contractive() ? ok : verification_failed;
}

void render_certificate(std::ostream& os, const std::string& name, const StabilityCertificate& c) {
  os << "problem=" << name << '\n';
  os << "L_contraction=" << full(c.L_contraction) << '\n';
  os << "L_contraction_4dp=" << dp4(c.L_contraction) << '\n';
  os << "contractive=" << (c.contractive() ? "true" : "false") << '\n';
  os << "zeta_derived=" << full(c.zeta_derived) << '\n';
  os << "zeta_as_stated=" << full(c.zeta_as_stated) << '\n';
  os << "zeta_variant=" << to_string(c.zeta_variant) << '\n';
  os << "C_p_E_alpha=" << full(c.C_p_E_alpha) << '\n';
  os << "C_f=" << full(c.C_f) << '\n';
  os << "m_convention=" << c.m_convention << '\n';
  os << "K=" << full(c.K) << '\n';
  os << "L_f=" << full(c.L_f) << '\n';
  os << "L_J=" << list(c.L_J) << '\n';
  os << "H1=" << (c.h1_constants_admissible ? "admissible" : "not-admissible") << '\n';
  os << "H2=" << (c.h2_constants_admissible ? "admissible" : "not-admissible") << '\n';
  os << "H3=" << (c.contractive() ? "contractive" : "not-contractive") << '\n';
}

int cmd_certify(const RunManifest& m, std::ostream& out) {
  const auto ivp = load(m);
  const auto c = certify(ivp, m.zeta);
  render_certificate(out, ivp.name, c);
  if (m.output_dir_set) {
    open_output(m);
    auto f = open_file(m, "certificate.txt");
    render_certificate(f, ivp.name, c);
  }
  return c.contractive() ? ok : verification_failed;
}

int cmd_uhml(const RunManifest& m, std::ostream& out, std::ostream& err) {
  const auto ivp = load(m);
  const auto c = certify(ivp, m.zeta);
  if (!c.contractive()) {
    err << "verify-uhml refused: L = " << full(c.L_contraction)
        << " >= 1, so the stability estimate does not apply to this problem\n";
    return verification_failed;
  }
  PerturbationSpec p;
  p.epsilon = m.epsilon;
  const auto r = uhml_verify(ivp, p, GridSpec{m.grid_n}, m.tol, m.zeta, options_for(m));
  write_uhml_report(out, r);
  if (m.output_dir_set) {
    open_output(m);
    auto f = open_file(m, "uhml_report.txt");
    write_uhml_report(f, r);
  }
  return r.pass && r.ulam_hyers_pass ? ok : verification_failed;
}

int cmd_study(const RunManifest& m, std::ostream& out) {
  const auto ivp = load(m);
  std::ostringstream table;
  table << "N,u_b,delta\n";
  double prev = std::nan("");
  for (std::size_t level = 0, n = m.grid_n; level < 4; ++level, n *= 2) {
    const auto sol = picard_solve(ivp, GridSpec{n}, m.tol, 200, options_for(m));
    const double ub = end_value(sol);
    table << n << ',' << full(ub) << ',';
    if (level > 0) table << full(std::abs(ub - prev));
    table << '\n';
    prev = ub;
  }
  out << table.str();
  if (m.output_dir_set) {
    open_output(m);
    auto f = open_file(m, "convergence_study.csv");
    f << table.str();
  }
  return ok;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::check_hypotheses: return "check-hypotheses";
    case Command::certify: return "certify";
    case Command::verify_uhml: return "verify-uhml";
    case Command::convergence_study: return "convergence-study";
  }
  return "?";
}

void RunManifest::validate() const {
  if (config_path.empty() == problem.empty())
    throw ConfigError("--config", "give exactly one of --config PATH or --problem NAME");
  if (grid_n < 8) throw ConfigError("--grid-n", "must be at least 8");
  if (!(tol > 0.0 && tol <= 1e-2)) throw ConfigError("--tol", "must lie in (0, 1e-2]");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ConfigError("--epsilon", "must be a nonnegative number");
}

int run(const RunManifest& m, std::ostream& out, std::ostream& err) {
  try {
    m.validate();
    switch (m.command) {
      case Command::solve: return cmd_solve(m, out);
      case Command::check_hypotheses: return cmd_check(m, out);
      case Command::certify: return cmd_certify(m, out);
      case Command::verify_uhml: return cmd_uhml(m, out, err);
      case Command::convergence_study: return cmd_study(m, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return error;
  }
  return error;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Impulsive Psi-Hilfer fractional delay equation solver and stability toolkit"};
  app.require_subcommand(1);

  RunManifest m;
  std::string zeta = "derived", scheme = "trap";

  auto common = [&](CLI::App* sub) {
    auto* cfg = sub->add_option("--config", m.config_path, "problem file (INI)");
    auto* prob = sub->add_option("--problem", m.problem, "built-in problem name")
                     ->check(CLI::IsMember(catalog_names()));
    cfg->excludes(prob);
    sub->add_option("--out", m.output_dir, "output directory");
    sub->add_option("--grid-n", m.grid_n, "number of grid panels (>= 8)");
    sub->add_option("--tol", m.tol, "Picard tolerance in (0, 1e-2]");
    sub->add_option("--seed", m.seed, "seed recorded in the run log");
    sub->add_option("--zeta", zeta, "stability envelope variant")->check(CLI::IsMember({"derived", "as-stated"}));
    sub->add_option("--scheme", scheme, "quadrature rule")->check(CLI::IsMember({"rect", "trap"}));
  };

  const std::pair<Command, const char*> subs[] = {
      {Command::solve, "solve on a grid, write solution.csv and convergence.log"},
      {Command::check_hypotheses, "echo (H1)/(H2) constants and compute the contraction constant"},
      {Command::certify, "print the stability certificate"},
      {Command::verify_uhml, "compare perturbed and exact solutions with the stability envelope"},
      {Command::convergence_study, "u(b) over doubling grid sizes"},
  };
  for (const auto& [cmd, desc] : subs) {
    auto* sub = app.add_subcommand(to_string(cmd), desc);
    common(sub);
    if (cmd == Command::verify_uhml) sub->add_option("--epsilon", m.epsilon, "perturbation size");
    sub->callback([&m, cmd = cmd] { m.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : error;
  }
  m.zeta = zeta == "derived" ? ZetaVariant::derived : ZetaVariant::as_stated;
  m.scheme = scheme == "rect" ? QuadratureScheme::product_rectangle : QuadratureScheme::product_trapezoid;
  for (auto* sub : app.get_subcommands())
    if (sub->count("--out") > 0) m.output_dir_set = true;
  return run(m, out, err);
}

}  // namespace hilfer::cli
