#include "hilfer/special_functions.hpp"

#include <cmath>
#include <sstream>

#include "hilfer/errors.hpp"

namespace hilfer {

double gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma: argument must be positive");
  if (x > 171.0) throw OverflowError("gamma: argument above 171 overflows double");
  return std::tgamma(x);
}

namespace {

// z^n / Gamma(n alpha + 1), switching to logarithms once the direct form
// would overflow.
double series_term(double alpha, double z, std::size_t n) {
  if (n == 0) return 1.0;
  if (z == 0.0) return 0.0;
  const double arg = static_cast<double>(n) * alpha + 1.0;
  const double nd = static_cast<double>(n);
  if (arg < 170.0) {
    const double p = std::pow(z, nd);
    if (std::isfinite(p)) return p / std::tgamma(arg);
  }
  const double mag = std::exp(nd * std::log(std::abs(z)) - std::lgamma(arg));
  return (z < 0.0 && (n % 2 == 1)) ? -mag : mag;
}

}  // namespace

double mittag_leffler(double alpha, double z, const MLEvalConfig& cfg) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("mittag_leffler: alpha must lie in (0, 1]");
  if (!(std::abs(z) <= 50.0)) throw DomainError("mittag_leffler: |z| must not exceed 50");
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) || cfg.max_terms < 10)
    throw DomainError("mittag_leffler: invalid evaluation config");
  // E_alpha(z) grows like exp(z^(1/alpha)) / alpha
  if (z > 1.0 && std::log(z) / alpha > std::log(709.0))
    throw OverflowError("mittag_leffler: E_alpha(z) exceeds the double range");

  double sum = 0.0;
  int small_in_a_row = 0;
  double term = 1.0;
  for (std::size_t n = 0; n < cfg.max_terms; ++n) {
    sum += term;
    if (!std::isfinite(sum)) throw OverflowError("mittag_leffler: series overflows double");
    const double next = series_term(alpha, z, n + 1);
    const double ratio = term != 0.0 ? std::abs(next / term) : 0.0;
    const double tail = ratio < 1.0 ? std::abs(next) / (1.0 - ratio) : HUGE_VAL;
    if (std::abs(next) < cfg.rel_tol * std::abs(sum)) {
      if (++small_in_a_row >= 2 && tail < cfg.rel_tol * std::abs(sum)) return sum;
    } else {
      small_in_a_row = 0;
    }
    term = next;
  }
  std::ostringstream os;
  os << "mittag_leffler: no convergence within " << cfg.max_terms << " terms (alpha=" << alpha
     << ", z=" << z << ")";
  throw ConvergenceError(os.str(), sum, cfg.max_terms);
}

}  // namespace hilfer
