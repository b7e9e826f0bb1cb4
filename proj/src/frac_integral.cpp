#include "hilfer/frac_integral.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <sstream>

#include "hilfer/errors.hpp"
#include "hilfer/special_functions.hpp"

namespace hilfer {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("fractional integral: alpha must lie in (0, 1)");
}

std::vector<double> transformed_nodes(const PsiSpec& psi, std::span<const double> grid) {
  if (grid.empty()) throw DomainError("fractional integral: empty grid");
  if (grid.front() != 0.0) throw DomainError("fractional integral: grid must start at 0");
  std::vector<double> x(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && grid[i] < grid[i - 1]) throw DomainError("fractional integral: grid must be nondecreasing");
    x[i] = psi.increment(grid[i], 0.0);
  }
  return x;
}

// Unnormalised weights of node j over panels first_panel..j, accumulated into out[0..j].
// pw is scratch of size >= j+1.
void node_weights(double alpha, std::span<const double> x, std::size_t j, QuadratureScheme scheme,
                  std::size_t first_panel, std::span<double> out, std::span<double> pw) {
  for (std::size_t i = 0; i <= j; ++i) out[i] = 0.0;
  if (j == 0) return;
  const double X = x[j];
  for (std::size_t i = first_panel - 1; i <= j; ++i) pw[i] = std::pow(X - x[i], alpha);
  for (std::size_t i = first_panel; i <= j; ++i) {
    const double ya = X - x[i - 1];
    const double yb = X - x[i];
    const double d = ya - yb;
    if (d <= 0.0) continue;
    const double m0 = (pw[i - 1] - pw[i]) / alpha;
    if (scheme == QuadratureScheme::product_rectangle) {
      out[i - 1] += 0.5 * m0;
      out[i] += 0.5 * m0;
    } else {
      const double m1 = (ya * pw[i - 1] - yb * pw[i]) / (alpha + 1.0);
      out[i - 1] += (m1 - yb * m0) / d;
      out[i] += (ya * m0 - m1) / d;
    }
  }
}

double singular_first_panel(double alpha, std::span<const double> x, std::size_t j, const SingularStart& s) {
  if (!(s.exponent > -1.0)) throw DomainError("fractional integral: singular exponent must exceed -1");
  const double X = x[j];
  const double x1 = x[1];
  if (x1 <= 0.0) return 0.0;
  const double a = s.exponent + 1.0;
  const double r = x1 / X;
  const double b = r >= 1.0 ? boost::math::beta(a, alpha) : boost::math::beta(a, alpha, r);
  return s.coefficient * std::pow(X, alpha + s.exponent) * b;
}

void check_samples(std::span<const double> g, std::size_t upto, bool skip_first) {
  if (g.size() <= upto) throw DomainError("fractional integral: too few integrand samples");
  for (std::size_t i = skip_first ? 1 : 0; i <= upto; ++i) {
    if (!std::isfinite(g[i])) {
      std::ostringstream os;
      os << "fractional integral: non-finite integrand sample at node " << i;
      throw DomainError(os.str());
    }
  }
}

}  // namespace

double frac_integral_at(double alpha, const PsiSpec& psi, std::span<const double> grid, std::span<const double> g,
                        std::size_t j, QuadratureScheme scheme, std::optional<SingularStart> singular) {
  check_alpha(alpha);
  if (j >= grid.size()) throw DomainError("fractional integral: node index out of range");
  if (j == 0) return 0.0;
  check_samples(g, j, singular.has_value());
  const auto x = transformed_nodes(psi, grid);
  std::vector<double> w(j + 1), pw(j + 1);
  const std::size_t first = singular ? 2 : 1;
  node_weights(alpha, x, j, scheme, first, w, pw);
  double acc = singular ? singular_first_panel(alpha, x, j, *singular) : 0.0;
  for (std::size_t i = first - 1; i <= j; ++i) acc += w[i] * g[i];
  return acc / gamma(alpha);
}

std::vector<double> frac_integral_profile(double alpha, const PsiSpec& psi, std::span<const double> grid,
                                          std::span<const double> g, QuadratureScheme scheme,
                                          std::optional<SingularStart> singular) {
  check_alpha(alpha);
  const std::size_t n = grid.size();
  check_samples(g, n - 1, singular.has_value());
  const auto x = transformed_nodes(psi, grid);
  const double inv_gamma = 1.0 / gamma(alpha);
  std::vector<double> out(n, 0.0), w(n), pw(n);
  const std::size_t first = singular ? 2 : 1;
  for (std::size_t j = 1; j < n; ++j) {
    node_weights(alpha, x, j, scheme, first, w, pw);
    double acc = singular ? singular_first_panel(alpha, x, j, *singular) : 0.0;
    for (std::size_t i = first - 1; i <= j; ++i) acc += w[i] * g[i];
    out[j] = acc * inv_gamma;
  }
  return out;
}

ProductQuadrature::ProductQuadrature(double alpha, const PsiSpec& psi, std::span<const double> grid,
                                     QuadratureScheme scheme)
    : n_(grid.size()) {
  check_alpha(alpha);
  const auto x = transformed_nodes(psi, grid);
  w_.assign(n_ * (n_ + 1) / 2, 0.0);
  std::vector<double> pw(n_);
  const double inv_gamma = 1.0 / gamma(alpha);
  for (std::size_t j = 1; j < n_; ++j) {
    std::span<double> row(w_.data() + j * (j + 1) / 2, j + 1);
    node_weights(alpha, x, j, scheme, 1, row, pw);
    for (double& v : row) v *= inv_gamma;
  }
}

std::span<const double> ProductQuadrature::weights(std::size_t j) const {
  if (j >= n_) throw DomainError("ProductQuadrature: node index out of range");
  return {w_.data() + j * (j + 1) / 2, j + 1};
}

double ProductQuadrature::at(std::span<const double> g, std::size_t j) const {
  auto w = weights(j);
  check_samples(g, j, false);
  double acc = 0.0;
  for (std::size_t i = 0; i <= j; ++i) acc += w[i] * g[i];
  return acc;
}

std::vector<double> ProductQuadrature::apply(std::span<const double> g) const {
  if (n_ == 0) return {};
  check_samples(g, n_ - 1, false);
  std::vector<double> out(n_, 0.0);
  for (std::size_t j = 1; j < n_; ++j) {
    const double* w = w_.data() + j * (j + 1) / 2;
    double acc = 0.0;
    for (std::size_t i = 0; i <= j; ++i) acc += w[i] * g[i];
    out[j] = acc;
  }
  return out;
}

}  // namespace hilfer
