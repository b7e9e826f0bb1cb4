#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hilfer/analysis.hpp"
#include "hilfer/cli.hpp"
#include "hilfer/config.hpp"
#include "hilfer/frac_integral.hpp"
#include "hilfer/picard.hpp"
#include "hilfer/special_functions.hpp"
#include "support/gronwall_cases.hpp"

using namespace hilfer;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int run_cli(std::vector<std::string> args, std::string& out, std::string& err) {
  args.insert(args.begin(), "hilfer-cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int status = cli::main(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  err = e.str();
  return status;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome contraction_constants() {
  Outcome o{true, ""};
  const std::pair<const char*, double> cases[] = {{"paper-ex-caputo", 0.1912}, {"paper-ex-rl", 0.1013}};
  for (const auto& [name, expected] : cases) {
    std::string out, err;
    const int status = run_cli({"check-hypotheses", "--problem", name}, out, err);
    const auto pos = out.find("L = ");
    double L = NAN;
    if (pos != std::string::npos) L = std::stod(out.substr(pos + 4));
    const bool ok = status == 0 && std::abs(L - expected) <= 5e-4 && out.find("NOT CONTRACTIVE") == std::string::npos;
    o.pass = o.pass && ok;
    o.detail += std::string(name) + " L=" + fmt("%.6f", L) + " ";
  }
  return o;
}

Outcome special_functions() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = -5.0 + 10.0 * i / 99.0;
    worst = std::max(worst, std::abs(mittag_leffler(1.0, z) / std::exp(z) - 1.0));
  }
  bool zero_ok = true;
  for (double a : {0.1, 0.25, 1.0 / 3.0, 0.5, 0.75, 1.0}) zero_ok = zero_ok && mittag_leffler(a, 0.0) == 1.0;
  const double gerr = std::abs(hilfer::gamma(0.5) - std::sqrt(std::numbers::pi));
  return {worst <= 1e-10 && zero_ok && gerr <= 1e-12,
          "max rel err E_1 vs exp " + fmt("%.2e", worst) + ", E_a(0)=1 " + (zero_ok ? "yes" : "no") +
              ", |Gamma(.5)-sqrt(pi)| " + fmt("%.2e", gerr)};
}

Outcome quadrature_convergence() {
  const QuadratureScheme schemes[] = {QuadratureScheme::product_rectangle, QuadratureScheme::product_trapezoid};
  const std::size_t Ns[] = {64, 128, 256, 512};
  bool pass = true;
  std::string failures;
  double worst_final[2] = {0.0, 0.0}, worst_order[2] = {INFINITY, INFINITY};
  for (double alpha : {1.0 / 3.0, 0.5})
    for (double delta : {1.0, 1.5, 2.0})
      for (int which = 0; which < 2; ++which) {
        const auto psi = which == 0 ? PsiSpec::identity(1.0) : PsiSpec::power(1.0, 2.0);
        const double X = psi.increment(1.0, 0.0);
        const double exact = hilfer::gamma(delta) / hilfer::gamma(alpha + delta) * std::pow(X, alpha + delta - 1.0);
        for (int si = 0; si < 2; ++si) {
          std::vector<double> lx, ly;
          double final_err = 0.0;
          for (std::size_t n : Ns) {
            std::vector<double> grid(n + 1), g(n + 1);
            for (std::size_t i = 0; i <= n; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(n);
            for (std::size_t i = 0; i <= n; ++i) g[i] = std::pow(psi.increment(grid[i], 0.0), delta - 1.0);
            final_err = std::abs(frac_integral_at(alpha, psi, grid, g, n, schemes[si]) - exact) / exact;
            lx.push_back(std::log(static_cast<double>(n)));
            ly.push_back(std::log(std::max(final_err, 1e-300)));
          }
          double order = INFINITY;
          if (final_err > 1e-13) {
            double mx = 0.0, my = 0.0;
            for (std::size_t k = 0; k < lx.size(); ++k) mx += lx[k] / lx.size(), my += ly[k] / ly.size();
            double sxy = 0.0, sxx = 0.0;
            for (std::size_t k = 0; k < lx.size(); ++k) sxy += (lx[k] - mx) * (ly[k] - my), sxx += (lx[k] - mx) * (lx[k] - mx);
            order = -sxy / sxx;
          }
          const double need = si == 0 ? 1.0 : 1.5;
          worst_final[si] = std::max(worst_final[si], final_err);
          worst_order[si] = std::min(worst_order[si], order);
          if (order < need || final_err > 1e-4) {
            pass = false;
            failures += std::string(si == 0 ? " rect" : " trap") + "(a=" + fmt("%.3g", alpha) + ",d=" + fmt("%.2g", delta) +
                        (which == 0 ? ",id" : ",t^2") + ",order=" + fmt("%.2f", order) + ",err=" + fmt("%.1e", final_err) + ")";
          }
        }
      }
  std::string detail = "rect min order " + fmt("%.2f", worst_order[0]) + " max err " + fmt("%.1e", worst_final[0]) +
                       "; trap min order " + fmt("%.2f", worst_order[1]) + " max err " + fmt("%.1e", worst_final[1]);
  if (!pass) detail += "; failing:" + failures;
  return {pass, detail};
}

Outcome solver_oracle() {
  const auto ivp = build_problem(catalog_config("linear-caputo"));
  const double exact = mittag_leffler(0.5, 1.0);
  double prev = INFINITY, err = 0.0;
  bool monotone = true;
  std::string detail;
  for (std::size_t n : {256, 512, 1024, 2048}) {
    const auto s = picard_solve(ivp, GridSpec{n});
    err = std::abs(solution_at(s, 1.0) - exact);
    monotone = monotone && err < prev;
    prev = err;
    detail += "N=" + std::to_string(n) + " err " + fmt("%.2e", err) + " ";
  }
  return {monotone && err / exact <= 0.01, detail + (monotone ? "monotone" : "not monotone")};
}

Outcome picard_contraction() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"paper-ex-caputo", "paper-ex-rl"}) {
    const auto ivp = build_problem(catalog_config(name));
    const double L = certify(ivp).L_contraction;
    const auto s = picard_solve(ivp, GridSpec{512});
    const auto& d = s.convergence;
    double worst = 0.0;
    for (std::size_t k = 1; k < d.size(); ++k)
      if (d[k - 1] > 0.0) worst = std::max(worst, d[k] / d[k - 1]);
    const bool ok = d.size() >= 2 && worst <= L + 0.05;
    pass = pass && ok;
    detail += std::string(name) + " max ratio " + fmt("%.4f", worst) + " vs L+0.05 " + fmt("%.4f", L + 0.05) + " (" +
              std::to_string(d.size()) + " sweeps) ";
  }
  return {pass, detail};
}

Outcome jump_identity() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"paper-ex-caputo", "paper-ex-rl"}) {
    const auto ivp = build_problem(catalog_config(name));
    const auto s = picard_solve(ivp, GridSpec{300});
    const double t1 = ivp.impulses.at(0).time;
    std::size_t l = s.grid().size(), r = l;
    for (std::size_t i = 0; i < s.grid().size(); ++i) {
      if (s.grid()[i] != t1) continue;
      if (s.kinds[i] == NodeKind::impulse_left) l = i;
      if (s.kinds[i] == NodeKind::impulse_right) r = i;
    }
    if (l == s.grid().size() || r == s.grid().size()) return {false, std::string(name) + " impulse nodes missing"};
    const double jump = s.weighted()[r] - s.weighted()[l];
    const double expected = ivp.impulses[0].map(solution_left_limit(s, t1)) / hilfer::gamma(ivp.order.rho());
    const double diff = std::abs(jump - expected);
    pass = pass && diff <= 1e-8;
    detail += std::string(name) + " jump " + fmt("%.10f", jump) + " |diff| " + fmt("%.1e", diff) + " ";
  }
  return {pass, detail};
}

Outcome gronwall_suite() {
  std::mt19937_64 rng(20240611);
  std::size_t violations = 0, nodes = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = testing_support::random_gronwall_case(rng);
    const GridSamples V{c.t, c.V}, g{c.t, c.g};
    for (std::size_t i = 0; i < c.t.size(); ++i, ++nodes) {
      const double bound = gronwall_bound(V, g, c.beta, c.imp_t, c.alpha, c.psi, c.t[i]);
      if (!(bound >= c.U[i] * (1.0 - 1e-12))) ++violations;
    }
  }
  return {violations == 0, "200 instances, " + std::to_string(nodes) + " nodes, " + std::to_string(violations) + " violations"};
}

Outcome uhml_envelope() {
  const auto ivp = build_problem(catalog_config("paper-ex-caputo"));
  bool pass = true;
  std::string detail;
  for (double eps : {1e-3, 1e-2}) {
    PerturbationSpec pert;
    pert.epsilon = eps;
    const auto r = uhml_verify(ivp, pert, GridSpec{2000});
    const bool ok = r.max_ratio_derived <= 1.0 && r.max_weighted_deviation <= eps * r.certificate.C_f;
    pass = pass && ok;
    detail += "eps=" + fmt("%.0e", eps) + " ratio " + fmt("%.4f", r.max_ratio_derived) + " dev " +
              fmt("%.3e", r.max_weighted_deviation) + " <= " + fmt("%.3e", eps * r.certificate.C_f) + " ";
  }
  return {pass, detail};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "hilfer_acceptance_determinism";
  fs::remove_all(root);
  const fs::path a = root / "a", b = root / "b";
  fs::create_directories(a);
  fs::create_directories(b);
  std::string out, err;
  for (const auto& d : {a, b})
    if (run_cli({"solve", "--problem", "paper-ex-rl", "--grid-n", "512", "--seed", "7", "--out", d.string()}, out, err) != 0)
      return {false, "solve failed: " + err};
  bool pass = true;
  std::string detail;
  for (const char* f : {"solution.csv", "convergence.log"}) {
    const auto x = slurp(a / f), y = slurp(b / f);
    const bool same = !x.empty() && x == y;
    pass = pass && same;
    detail += std::string(f) + (same ? " identical (" + std::to_string(x.size()) + " bytes) " : " differs ");
  }
  fs::remove_all(root);
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "contraction constants", 1.0, contraction_constants},
      {2, "special-function identities", 1.0, special_functions},
      {3, "quadrature convergence", 10.0, quadrature_convergence},
      {4, "solver oracle equivalence", 30.0, solver_oracle},
      {5, "Picard contraction property", 30.0, picard_contraction},
      {6, "impulse jump identity", 5.0, jump_identity},
      {7, "Gronwall dominance suite", 30.0, gronwall_suite},
      {8, "UHML envelope", 60.0, uhml_envelope},
      {9, "determinism", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit <= 0.0 || secs < c.time_limit;
    while (!o.detail.empty() && o.detail.back() == ' ') o.detail.pop_back();
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " (" << fmt("%.3f", secs)
              << " s" << (c.time_limit > 0.0 ? " / limit " + fmt("%.0f", c.time_limit) + " s" : "") << ")"
              << (in_time ? "" : " TIMEOUT") << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
