#include "hilfer/psi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hilfer/errors.hpp"
#include "hilfer/special_functions.hpp"

namespace hilfer {

std::string to_string(PsiKind kind) {
  switch (kind) {
    case PsiKind::identity:
      return "identity";
    case PsiKind::log_shifted:
      return "log-shifted";
    case PsiKind::power:
      return "power";
    case PsiKind::tabulated:
      return "tabulated";
  }
  return "unknown";
}

PsiSpec::PsiSpec(PsiKind kind, double b, double param, std::shared_ptr<const Table> table)
    : kind_(kind), b_(b), param_(param), table_(std::move(table)) {
  if (!(b_ > 0.0) || !std::isfinite(b_)) throw DomainError("Psi horizon b must be positive and finite");
}

PsiSpec PsiSpec::identity(double b) { return PsiSpec(PsiKind::identity, b, 0.0, nullptr); }

PsiSpec PsiSpec::log_shifted(double b, double shift) {
  if (!(shift > 0.0) || !std::isfinite(shift)) throw DomainError("log-shifted Psi needs shift > 0");
  return PsiSpec(PsiKind::log_shifted, b, shift, nullptr);
}

PsiSpec PsiSpec::power(double b, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("power Psi needs sigma > 0");
  return PsiSpec(PsiKind::power, b, sigma, nullptr);
}

PsiSpec PsiSpec::tabulated(std::vector<double> nodes, std::vector<double> values,
                           std::vector<double> derivs) {
  if (nodes.size() < 2) throw DomainError("tabulated Psi needs at least two nodes");
  if (values.size() != nodes.size() || derivs.size() != nodes.size())
    throw DomainError("tabulated Psi: nodes, values and derivs must have equal length");
  if (nodes.front() != 0.0) throw DomainError("tabulated Psi: first node must be 0");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1])) throw DomainError("tabulated Psi: nodes must be strictly increasing");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!std::isfinite(values[i]) || !std::isfinite(derivs[i]))
      throw DomainError("tabulated Psi: non-finite value or derivative");
  const double b = nodes.back();
  auto table = std::make_shared<Table>(Table{std::move(nodes), std::move(values), std::move(derivs)});
  return PsiSpec(PsiKind::tabulated, b, 0.0, std::move(table));
}

void PsiSpec::check_domain(double t) const {
  if (!(t >= 0.0 && t <= b_)) {
    std::ostringstream os;
    os << "time " << t << " outside Psi domain [0, " << b_ << "]";
    throw DomainError(os.str());
  }
}

std::size_t PsiSpec::segment(double t) const {
  const auto& nodes = table_->t;
  auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
  std::size_t i = it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
  return std::min(i, nodes.size() - 2);
}

double PsiSpec::eval(double t) const {
  check_domain(t);
  switch (kind_) {
    case PsiKind::identity:
      return t;
    case PsiKind::log_shifted:
      return std::log(t + param_);
    case PsiKind::power:
      return std::pow(t, param_);
    case PsiKind::tabulated: {
      const auto& tb = *table_;
      const std::size_t i = segment(t);
      const double h = tb.t[i + 1] - tb.t[i];
      const double s = (t - tb.t[i]) / h;
      const double s2 = s * s, s3 = s2 * s;
      const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
      const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
      return h00 * tb.v[i] + h10 * h * tb.d[i] + h01 * tb.v[i + 1] + h11 * h * tb.d[i + 1];
    }
  }
  return 0.0;
}

double PsiSpec::deriv(double t) const {
  check_domain(t);
  switch (kind_) {
    case PsiKind::identity:
      return 1.0;
    case PsiKind::log_shifted:
      return 1.0 / (t + param_);
    case PsiKind::power:
      if (t == 0.0) return param_ == 1.0 ? 1.0 : (param_ > 1.0 ? 0.0 : HUGE_VAL);
      return param_ * std::pow(t, param_ - 1.0);
    case PsiKind::tabulated: {
      const auto& tb = *table_;
      const std::size_t i = segment(t);
      const double h = tb.t[i + 1] - tb.t[i];
      const double s = (t - tb.t[i]) / h;
      const double s2 = s * s;
      const double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1;
      const double d01 = -6 * s2 + 6 * s, d11 = 3 * s2 - 2 * s;
      return (d00 * tb.v[i] + d01 * tb.v[i + 1]) / h + d10 * tb.d[i] + d11 * tb.d[i + 1];
    }
  }
  return 0.0;
}

double PsiSpec::increment(double t, double s) const {
  check_domain(t);
  check_domain(s);
  if (t == s) return 0.0;
  switch (kind_) {
    case PsiKind::identity:
      return t - s;
    case PsiKind::log_shifted:
      return std::log1p((t - s) / (s + param_));
    default:
      return eval(t) - eval(s);
  }
}

std::span<const double> PsiSpec::table_nodes() const {
  return table_ ? std::span<const double>(table_->t) : std::span<const double>{};
}
std::span<const double> PsiSpec::table_values() const {
  return table_ ? std::span<const double>(table_->v) : std::span<const double>{};
}
std::span<const double> PsiSpec::table_derivs() const {
  return table_ ? std::span<const double>(table_->d) : std::span<const double>{};
}

FractionalOrder::FractionalOrder(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
}

void WeightedGridFunction::validate() const {
  if (grid.empty()) throw DomainError("weighted grid function: empty grid");
  if (grid.size() != weighted_values.size())
    throw DomainError("weighted grid function: grid and values differ in length");
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("weighted grid function: rho must lie in (0, 1]");
  if (grid.front() != 0.0) throw DomainError("weighted grid function: grid must start at 0");
  if (psi && grid.back() != psi->horizon())
    throw DomainError("weighted grid function: grid must end at the Psi horizon");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] < grid[i - 1]) throw DomainError("weighted grid function: grid decreases");
    if (grid[i] == grid[i - 1] && i >= 2 && grid[i - 2] == grid[i])
      throw DomainError("weighted grid function: a time may appear at most twice");
  }
  for (double w : weighted_values)
    if (!std::isfinite(w)) throw DomainError("weighted grid function: non-finite weighted value");
}

double psi_increment(const PsiSpec& psi, double t, double s) {
  if (s > t) throw DomainError("psi_increment requires s <= t");
  return psi.increment(t, s);
}

double kernel(const PsiSpec& psi, double alpha, double t, double s) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("kernel: alpha must lie in (0, 1)");
  if (s > t) throw DomainError("kernel: requires s < t");
  if (s == t) throw SingularityError("kernel: evaluated at the singularity s == t");
  return psi.deriv(s) * std::pow(psi.increment(t, s), alpha - 1.0);
}

double rho_weight(const PsiSpec& psi, double rho, double t) {
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("rho_weight: rho must lie in (0, 1]");
  if (t < 0.0 || t > psi.horizon()) throw DomainError("rho_weight: t outside [0, b]");
  if (rho == 1.0) return 1.0;
  if (t == 0.0) throw SingularityError("rho_weight: singular at t = 0 for rho < 1");
  return std::pow(psi.increment(t, 0.0), rho - 1.0) / gamma(rho);
}

double weight_factor(const PsiSpec& psi, double rho, double t) {
  if (rho == 1.0) return 1.0;
  return std::pow(psi.increment(t, 0.0), 1.0 - rho);
}

double weighted_norm(std::span<const double> weighted_values) {
  if (weighted_values.empty()) throw DomainError("weighted_norm: empty grid");
  double m = 0.0;
  for (double w : weighted_values) m = std::max(m, std::abs(w));
  return m;
}

double weighted_norm(const WeightedGridFunction& u) { return weighted_norm(u.weighted_values); }

PsiValidation validate_psi(const PsiSpec& psi, std::size_t probe_count) {
  if (probe_count < 2) throw DomainError("validate_psi: probe_count must be at least 2");
  PsiValidation r;
  const double b = psi.horizon();
  const double h = 1e-6 * b;
  double prev = 0.0;
  for (std::size_t i = 0; i < probe_count; ++i) {
    const double t = i + 1 == probe_count ? b : b * static_cast<double>(i) / static_cast<double>(probe_count - 1);
    const double v = psi.eval(t);
    const double d = psi.deriv(t);
    if (!std::isfinite(v) || !std::isfinite(d)) {
      r.issues.push_back("non-finite Psi or Psi' at t=" + std::to_string(t));
      r.positive_derivative = false;
      continue;
    }
    if (i > 0 && !(v > prev)) {
      if (r.monotone) r.issues.push_back("Psi not strictly increasing near t=" + std::to_string(t));
      r.monotone = false;
    }
    prev = v;
    if (!(d > 0.0)) {
      if (r.positive_derivative) r.issues.push_back("Psi' not positive at t=" + std::to_string(t));
      r.positive_derivative = false;
    }
    double fd;
    if (t - h < 0.0)
      fd = (-3.0 * psi.eval(t) + 4.0 * psi.eval(t + h) - psi.eval(t + 2 * h)) / (2 * h);
    else if (t + h > b)
      fd = (3.0 * psi.eval(t) - 4.0 * psi.eval(t - h) + psi.eval(t - 2 * h)) / (2 * h);
    else
      fd = (psi.eval(t + h) - psi.eval(t - h)) / (2 * h);
    const double scale = std::max(std::abs(d), std::abs(fd));
    const double rel = scale > 0.0 ? std::abs(fd - d) / scale : 0.0;
    r.max_derivative_rel_error = std::max(r.max_derivative_rel_error, rel);
    if (rel > 1e-6) {
      if (r.derivative_consistent)
        r.issues.push_back("Psi' disagrees with finite difference of Psi at t=" + std::to_string(t));
      r.derivative_consistent = false;
    }
  }
  r.pass = r.monotone && r.positive_derivative && r.derivative_consistent;
  return r;
}

}  // namespace hilfer
