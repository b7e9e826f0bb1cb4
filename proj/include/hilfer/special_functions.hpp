#pragma once

#include <cstddef>

namespace hilfer {

struct MLEvalConfig {
  double rel_tol = 1e-12;
  std::size_t max_terms = 500;
};

// Gamma(x) for 0 < x <= 171.
double gamma(double x);

/*
 * One-parameter Mittag-Leffler function E_alpha(z) = sum_n z^n / Gamma(n alpha + 1)
 * by direct summation, for alpha in (0, 1] and |z| <= 50.
 *
 * Summation stops once two consecutive terms are below rel_tol * |partial sum|
 * and the geometric tail estimate |t_{n+1}| / (1 - |t_{n+1} / t_n|) is too;
 * for alpha < 1 the term magnitudes are not monotone at small n, so a single
 * small term is not enough. For large negative z the alternating series loses
 * digits to cancellation; callers in this library only use z >= 0.
 * OverflowError when z^(1/alpha) > 709, where the value leaves the double range.
 */
double mittag_leffler(double alpha, double z, const MLEvalConfig& cfg = {});

}  // namespace hilfer
