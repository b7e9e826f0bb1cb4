#include "hilfer/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hilfer/errors.hpp"
#include "hilfer/special_functions.hpp"

namespace hilfer {

namespace {

void check_constants(double K, double L_f, std::span<const double> L_J, const char* who) {
  const std::string w(who);
  if (!(L_f < 1.0)) throw DomainError(w + ": L_f >= 1, the implicit equation for g is not a contraction");
  if (!(L_f >= 0.0)) throw DomainError(w + ": L_f must be nonnegative");
  if (!(K >= 0.0) || !std::isfinite(K)) throw DomainError(w + ": K must be nonnegative and finite");
  for (double l : L_J)
    if (!(l >= 0.0) || !std::isfinite(l)) throw DomainError(w + ": L_J constants must be nonnegative and finite");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double contraction_constant(const FractionalOrder& order, const PsiSpec& psi, double b, double K, double L_f,
                            std::span<const double> L_J) {
  check_constants(K, L_f, L_J, "contraction_constant");
  const double alpha = order.alpha(), rho = order.rho();
  const double X = psi.increment(b, 0.0);
  double sum_j = 0.0;
  for (double l : L_J) sum_j += l;
  return sum_j / gamma(rho) + 2.0 * K * std::pow(X, 1.0 - rho + alpha) / ((1.0 - L_f) * gamma(alpha + 1.0));
}

double GridSamples::at(double t) const {
  if (grid.empty() || grid.size() != values.size()) throw DomainError("GridSamples: grid and values mismatch");
  if (t <= grid.front()) return values.front();
  if (t >= grid.back()) return values.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(grid.begin(), grid.end(), t) - grid.begin());
  const std::size_t lo = hi - 1;
  if (grid[hi] == grid[lo]) return values[hi];
  const double s = (t - grid[lo]) / (grid[hi] - grid[lo]);
  return values[lo] + s * (values[hi] - values[lo]);
}

double gronwall_bound(const GridSamples& V, const GridSamples& g_coeff, std::span<const double> beta_k,
                      std::span<const double> impulse_times, double alpha, const PsiSpec& psi, double t) {
  if (beta_k.size() != impulse_times.size()) throw DomainError("gronwall_bound: one beta per impulse time");
  for (std::size_t i = 0; i < V.values.size(); ++i)
    if (V.values[i] < 0.0) throw DomainError("gronwall_bound: negative V sample at index " + std::to_string(i));
  for (double b : beta_k)
    if (!(b >= 0.0)) throw DomainError("gronwall_bound: beta_k must be nonnegative");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("gronwall_bound: alpha must lie in (0, 1]");

  const double gt = g_coeff.at(t);
  if (gt < 0.0) throw DomainError("gronwall_bound: g(t) < 0 at t=" + fmt(t));
  const double c = gt * gamma(alpha);
  double bound = V.at(t) * mittag_leffler(alpha, c * std::pow(psi.increment(t, 0.0), alpha));
  for (std::size_t i = 0; i < impulse_times.size(); ++i) {
    if (!(impulse_times[i] < t)) continue;
    bound *= 1.0 + beta_k[i] * mittag_leffler(alpha, c * std::pow(psi.increment(impulse_times[i], 0.0), alpha));
  }
  return bound;
}

std::string to_string(ZetaVariant z) { return z == ZetaVariant::derived ? "derived" : "as-stated"; }

StabilityCertificate stability_constants(const FractionalOrder& order, const PsiSpec& psi, double b, double K,
                                         double L_f, std::span<const double> L_J, std::size_t p,
                                         ZetaVariant variant) {
  check_constants(K, L_f, L_J, "stability_constants");
  if (L_J.size() != p && !L_J.empty()) throw DomainError("stability_constants: need one L_J per impulse");
  const double alpha = order.alpha(), rho = order.rho();
  const double X = psi.increment(b, 0.0);
  const double Xw = std::pow(X, 1.0 - rho);
  const double g_rho = gamma(rho);

  StabilityCertificate c;
  c.L_contraction = contraction_constant(order, psi, b, K, L_f, L_J);
  c.zeta_as_stated = 2.0 * Xw / (1.0 - L_f);
  c.zeta_derived = K * c.zeta_as_stated;
  c.zeta_variant = variant;
  c.m_convention = static_cast<int>(p);
  c.K = K;
  c.L_f = L_f;
  c.L_J.assign(L_J.begin(), L_J.end());
  c.h1_constants_admissible = K > 0.0 && L_f > 0.0 && L_f < 1.0;
  c.h2_constants_admissible = std::all_of(L_J.begin(), L_J.end(), [](double l) { return l > 0.0; });

  const double L_max = L_J.empty() ? 0.0 : *std::max_element(L_J.begin(), L_J.end());
  const double inner = mittag_leffler(alpha, 2.0 * K * std::pow(X, 1.0 - rho + alpha) / (1.0 - L_f));
  const double braced = 1.0 + L_max / g_rho * inner;
  c.C_p_E_alpha = (static_cast<double>(p) / g_rho + Xw * mittag_leffler(alpha, std::pow(X, alpha))) *
                  std::pow(braced, static_cast<double>(p));
  c.C_f = c.C_p_E_alpha * mittag_leffler(alpha, c.zeta() * std::pow(X, alpha));
  return c;
}

StabilityCertificate certify(const ImpulsiveDelayIVP& ivp, ZetaVariant variant) {
  if (!ivp.lipschitz) throw ConfigError("lipschitz", "problem has no Lipschitz data");
  const auto& L = *ivp.lipschitz;
  return stability_constants(ivp.order, ivp.psi, ivp.horizon(), L.K, L.L_f, L.L_J, ivp.impulses.size(), variant);
}

double PerturbationSpec::eta(double t) const {
  if (shape == PerturbationShape::constant_one) return 1.0;
  return std::sin(2.0 * std::numbers::pi * frequency * t);
}

void PerturbationSpec::validate(std::size_t impulse_count) const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw DomainError("PerturbationSpec: epsilon must be >= 0");
  if (shape == PerturbationShape::sinusoidal && !std::isfinite(frequency))
    throw DomainError("PerturbationSpec: frequency must be finite");
  for (int i = 0; i <= 256; ++i) {
    const double e = eta(i / 256.0);
    if (!(std::abs(e) <= 1.0)) throw DomainError("PerturbationSpec: |eta| > 1");
  }
  if (!xi.empty() && xi.size() != impulse_count)
    throw DomainError("PerturbationSpec: need one xi per impulse (" + std::to_string(impulse_count) + ")");
  for (double x : xi)
    if (!(std::abs(x) <= 1.0)) throw DomainError("PerturbationSpec: |xi_k| > 1");
}

ImpulsiveDelayIVP perturbed_problem(const ImpulsiveDelayIVP& ivp, const PerturbationSpec& pert) {
  pert.validate(ivp.impulses.size());
  ImpulsiveDelayIVP v = ivp;
  v.name = ivp.name + " (perturbed)";
  const double eps = pert.epsilon;
  const double alpha = ivp.order.alpha();
  const PsiSpec psi = ivp.psi;
  v.rhs = [f = ivp.rhs, pert, eps, alpha, psi](double t, double u, double ud, double w) {
    const double E = eps * pert.eta(t) * mittag_leffler(alpha, std::pow(psi.increment(t, 0.0), alpha));
    return f(t, u, ud, w) + E;
  };
  for (std::size_t k = 0; k < v.impulses.size(); ++k) {
    const double shift = eps * (pert.xi.empty() ? 1.0 : pert.xi[k]);
    v.impulses[k].map = [J = ivp.impulses[k].map, shift](double u) { return J(u) + shift; };
  }
  return v;
}

UhmlReport uhml_verify(const ImpulsiveDelayIVP& ivp, const PerturbationSpec& pert, const GridSpec& grid, double tol,
                       ZetaVariant variant, PicardOptions options) {
  const StabilityCertificate cert = certify(ivp, variant);
  if (!cert.contractive())
    throw DomainError("uhml_verify: contraction constant L = " + fmt(cert.L_contraction) +
                      " >= 1, the stability estimate does not apply");
  const ImpulsiveDelayIVP pv = perturbed_problem(ivp, pert);

  const GridSolution u = picard_solve(ivp, grid, tol, 200, options);
  const GridSolution v = picard_solve(pv, grid, tol, 200, options);

  UhmlReport r;
  r.epsilon = pert.epsilon;
  r.zeta_variant = variant;
  r.certificate = cert;
  r.sweeps_exact = u.convergence.size();
  r.sweeps_perturbed = v.convergence.size();

  const double alpha = ivp.order.alpha();
  const auto& t = u.grid();
  const auto& wu = u.weighted();
  const auto& wv = v.weighted();
  auto ratio = [&](double dev, double zeta, double ti) {
    const double env = pert.epsilon * cert.C_p_E_alpha *
                       mittag_leffler(alpha, zeta * std::pow(ivp.psi.increment(ti, 0.0), alpha));
    if (env == 0.0) return dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return dev / env;
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dev = std::abs(wv[i] - wu[i]);
    if (dev > r.max_weighted_deviation) r.max_weighted_deviation = dev;
    const double rd = ratio(dev, cert.zeta_derived, t[i]);
    const double ra = ratio(dev, cert.zeta_as_stated, t[i]);
    if (rd > r.max_ratio_derived) {
      r.max_ratio_derived = rd;
      r.argmax_time_derived = t[i];
    }
    if (ra > r.max_ratio_as_stated) {
      r.max_ratio_as_stated = ra;
      r.argmax_time_as_stated = t[i];
    }
  }
  if (variant == ZetaVariant::derived) {
    r.max_ratio = r.max_ratio_derived;
    r.argmax_time = r.argmax_time_derived;
  } else {
    r.max_ratio = r.max_ratio_as_stated;
    r.argmax_time = r.argmax_time_as_stated;
  }
  r.pass = r.max_ratio <= 1.0;
  r.ulam_hyers_bound = pert.epsilon * cert.C_f;
  r.ulam_hyers_pass = r.max_weighted_deviation <= r.ulam_hyers_bound;
  return r;
}

void write_uhml_report(std::ostream& out, const UhmlReport& r) {
  auto line = [&](const char* key, const std::string& value) { out << key << '=' << value << '\n'; };
  line("epsilon", fmt(r.epsilon));
  line("zeta_variant", to_string(r.zeta_variant));
  line("max_ratio", fmt(r.max_ratio));
  line("argmax_time", fmt(r.argmax_time));
  line("pass", r.pass ? "true" : "false");
  line("max_ratio_derived", fmt(r.max_ratio_derived));
  line("argmax_time_derived", fmt(r.argmax_time_derived));
  line("max_ratio_as_stated", fmt(r.max_ratio_as_stated));
  line("argmax_time_as_stated", fmt(r.argmax_time_as_stated));
  line("max_weighted_deviation", fmt(r.max_weighted_deviation));
  line("ulam_hyers_bound", fmt(r.ulam_hyers_bound));
  line("ulam_hyers_pass", r.ulam_hyers_pass ? "true" : "false");
  line("L_contraction", fmt(r.certificate.L_contraction));
  line("C_p_E_alpha", fmt(r.certificate.C_p_E_alpha));
  line("C_f", fmt(r.certificate.C_f));
  line("sweeps_exact", std::to_string(r.sweeps_exact));
  line("sweeps_perturbed", std::to_string(r.sweeps_perturbed));
}

}  // namespace hilfer
