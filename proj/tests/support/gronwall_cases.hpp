#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hilfer/psi.hpp"

namespace testing_support {

using hilfer::PsiSpec;

struct GronwallCase {
  std::vector<double> t, V, g, U;
  std::vector<double> imp_t, beta;
  double alpha;
  PsiSpec psi = PsiSpec::identity(1.0);
};

// U_i = V_i + g_i sum_{j<i} U_j int_{s_j}^{s_{j+1}} A(t_i, s) ds + sum_{t_k < t_i} beta_k U(t_k-)
// with exact kernel moments; U is nondecreasing, so the left-endpoint sum is below the integral.
inline GronwallCase random_gronwall_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GronwallCase c;
  c.alpha = 0.25 + 0.7 * u(rng);
  const int kind = static_cast<int>(u(rng) * 3.0);
  c.psi = kind == 0 ? PsiSpec::identity(1.0) : kind == 1 ? PsiSpec::log_shifted(1.0, 0.2 + u(rng))
                                                         : PsiSpec::power(1.0, 0.5 + u(rng));
  const std::size_t n = 40 + static_cast<std::size_t>(u(rng) * 80.0);
  c.t.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c.t[i] = static_cast<double>(i) / static_cast<double>(n);
  c.V.resize(n + 1);
  c.g.resize(n + 1);
  double v = 0.1 + u(rng), g = 0.5 * u(rng);
  const double v_slope = 0.05 * u(rng), g_slope = 0.05 * u(rng);
  for (std::size_t i = 0; i <= n; ++i) {
    v += v_slope * u(rng);
    g += g_slope * u(rng);
    c.V[i] = v;
    c.g[i] = g;
  }
  const int p = static_cast<int>(u(rng) * 4.0);
  std::vector<std::size_t> idx;
  for (int k = 0; k < p; ++k) idx.push_back(1 + static_cast<std::size_t>(u(rng) * static_cast<double>(n - 1)));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (auto i : idx) {
    c.imp_t.push_back(c.t[i]);
    c.beta.push_back(0.05 + 0.95 * u(rng));
  }

  // scale g so that the largest Mittag-Leffler argument has z^(1/alpha) <= 40
  const double xb = c.psi.increment(1.0, 0.0);
  const double zmax = (0.05 + 0.95 * u(rng)) * std::pow(40.0, c.alpha);
  const double scale = zmax / (std::tgamma(c.alpha) * std::pow(xb, c.alpha) * c.g.back());
  for (auto& gi : c.g) gi *= scale;

  c.U.resize(n + 1);
  std::vector<double> x(n + 1);
  for (std::size_t i = 0; i <= n; ++i) x[i] = c.psi.increment(c.t[i], 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    double integral = 0.0;
    for (std::size_t j = 0; j < i; ++j)
      integral += c.U[j] * (std::pow(x[i] - x[j], c.alpha) - std::pow(x[i] - x[j + 1], c.alpha)) / c.alpha;
    double jumps = 0.0;
    for (std::size_t k = 0; k < c.imp_t.size(); ++k) {
      if (!(c.imp_t[k] < c.t[i])) continue;
      const auto at = static_cast<std::size_t>(std::lower_bound(c.t.begin(), c.t.end(), c.imp_t[k]) - c.t.begin());
      jumps += c.beta[k] * c.U[at];
    }
    c.U[i] = c.V[i] + c.g[i] * integral + jumps;
  }
  return c;
}

}  // namespace testing_support
