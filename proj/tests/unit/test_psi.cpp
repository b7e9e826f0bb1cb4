#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hilfer/errors.hpp"
#include "hilfer/psi.hpp"

using namespace hilfer;

TEST(PsiIncrement, Examples) {
  EXPECT_DOUBLE_EQ(psi_increment(PsiSpec::identity(1.0), 1.0, 0.0), 1.0);
  EXPECT_EQ(psi_increment(PsiSpec::power(1.0, 2.0), 0.3, 0.3), 0.0);
  EXPECT_DOUBLE_EQ(psi_increment(PsiSpec::power(1.0, 2.0), 1.0, 0.5), 0.75);
  EXPECT_THROW(psi_increment(PsiSpec::identity(1.0), 0.2, 0.5), DomainError);
  EXPECT_THROW(psi_increment(PsiSpec::identity(1.0), 1.5, 0.5), DomainError);
}

TEST(PsiIncrement, Telescoping) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const PsiSpec kinds[] = {PsiSpec::identity(2.0), PsiSpec::log_shifted(2.0), PsiSpec::power(2.0, 1.5),
                           PsiSpec::tabulated({0.0, 1.0, 2.0}, {0.0, 1.5, 2.5}, {2.0, 1.0, 1.0})};
  for (const auto& psi : kinds) {
    for (int i = 0; i < 500; ++i) {
      double a = u(rng), b = u(rng), c = u(rng);
      if (a > b) std::swap(a, b);
      if (b > c) std::swap(b, c);
      if (a > b) std::swap(a, b);
      const double whole = psi_increment(psi, c, a);
      const double parts = psi_increment(psi, c, b) + psi_increment(psi, b, a);
      EXPECT_NEAR(whole, parts, 8e-16 * std::max(1.0, std::abs(whole))) << to_string(psi.kind());
    }
  }
}

TEST(PsiSpec, LogShiftedAndTabulated) {
  const auto h = PsiSpec::log_shifted(1.0, 1.0);
  EXPECT_NEAR(h.eval(1.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(h.deriv(1.0), 0.5, 1e-15);
  EXPECT_NEAR(h.increment(1e-12, 0.0), 1e-12, 1e-24);

  // a cubic Hermite table reproduces a cubic exactly
  auto p = [](double t) { return t + t * t * t / 3.0; };
  auto dp = [](double t) { return 1.0 + t * t; };
  const auto tab = PsiSpec::tabulated({0.0, 0.5, 1.0}, {p(0.0), p(0.5), p(1.0)}, {dp(0.0), dp(0.5), dp(1.0)});
  for (double t : {0.0, 0.1, 0.37, 0.5, 0.81, 1.0}) {
    EXPECT_NEAR(tab.eval(t), p(t), 1e-14);
    EXPECT_NEAR(tab.deriv(t), dp(t), 1e-13);
  }
  EXPECT_THROW(PsiSpec::tabulated({0.0, 0.5, 0.5}, {0, 1, 2}, {1, 1, 1}), DomainError);
  EXPECT_THROW(PsiSpec::power(1.0, -1.0), DomainError);
}

TEST(Kernel, Examples) {
  const auto id = PsiSpec::identity(1.0);
  EXPECT_DOUBLE_EQ(kernel(id, 0.5, 1.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(kernel(id, 0.5, 1.0, 0.75), 2.0);
  EXPECT_THROW(kernel(id, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(kernel(id, 0.5, 0.5, 0.5), SingularityError);
}

TEST(Kernel, Positive) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto psi = PsiSpec::log_shifted(1.0, 0.5);
  for (int i = 0; i < 1000; ++i) {
    double s = u(rng), t = u(rng);
    if (s == t) continue;
    if (s > t) std::swap(s, t);
    EXPECT_GT(kernel(psi, 0.01 + 0.98 * u(rng), t, s), 0.0);
  }
}

TEST(RhoWeight, Examples) {
  const auto id = PsiSpec::identity(1.0);
  for (double t : {0.0, 0.3, 1.0}) {
    EXPECT_EQ(rho_weight(id, 1.0, t), 1.0);
    EXPECT_EQ(rho_weight(PsiSpec::log_shifted(1.0), 1.0, t), 1.0);
  }
  EXPECT_NEAR(rho_weight(id, 1.0 / 3.0, 1.0), 0.373282173907395228, 1e-14);
  EXPECT_NEAR(rho_weight(id, 0.5, 0.25), 2.0 / std::sqrt(std::acos(-1.0)), 1e-14);
  EXPECT_THROW(rho_weight(id, 0.5, 0.0), SingularityError);
}

TEST(FractionalOrder, RhoRange) {
  for (double a : {0.01, 0.3, 0.5, 0.99})
    for (double b : {0.0, 0.25, 1.0}) {
      FractionalOrder o(a, b);
      EXPECT_DOUBLE_EQ(o.rho(), a + b - a * b);
      EXPECT_GE(o.rho(), a);
      EXPECT_LE(o.rho(), 1.0);
    }
  EXPECT_THROW(FractionalOrder(1.0, 0.5), DomainError);
  EXPECT_THROW(FractionalOrder(0.5, 1.5), DomainError);
}

TEST(WeightedNorm, Examples) {
  const std::vector<double> zeros(5, 0.0);
  EXPECT_EQ(weighted_norm(zeros), 0.0);
  const std::vector<double> v = {1.0, -3.0, 2.0};
  EXPECT_EQ(weighted_norm(v), 3.0);
  EXPECT_THROW(weighted_norm(std::vector<double>{}), DomainError);

  WeightedGridFunction w;
  w.grid = {0.0, 0.5, 1.0};
  w.weighted_values = {0.5, -2.0, 1.0};
  w.rho = 1.0;
  w.psi = std::make_shared<const PsiSpec>(PsiSpec::identity(1.0));
  w.validate();
  EXPECT_EQ(weighted_norm(w), 2.0);
}

TEST(WeightedNorm, Axioms) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(17), b(17), s(17), c(17);
    const double k = n(rng);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = n(rng);
      b[i] = n(rng);
      s[i] = a[i] + b[i];
      c[i] = k * a[i];
    }
    EXPECT_LE(weighted_norm(s), weighted_norm(a) + weighted_norm(b) + 1e-15);
    EXPECT_NEAR(weighted_norm(c), std::abs(k) * weighted_norm(a), 1e-15 * weighted_norm(c) + 1e-300);
    EXPECT_GE(weighted_norm(a), 0.0);
  }
}

TEST(WeightedGridFunction, Validation) {
  WeightedGridFunction w;
  w.grid = {0.0, 0.5, 0.5, 1.0};
  w.weighted_values = {1.0, 1.0, 2.0, 2.0};
  w.rho = 0.5;
  w.psi = std::make_shared<const PsiSpec>(PsiSpec::identity(1.0));
  EXPECT_NO_THROW(w.validate());
  w.grid = {0.0, 0.5, 0.5, 0.5};
  EXPECT_THROW(w.validate(), DomainError);
  w.grid = {0.0, 0.5, 0.5, 1.0};
  w.weighted_values[1] = std::nan("");
  EXPECT_THROW(w.validate(), DomainError);
}

TEST(ValidatePsi, Examples) {
  EXPECT_TRUE(validate_psi(PsiSpec::identity(1.0), 100).pass);
  EXPECT_TRUE(validate_psi(PsiSpec::log_shifted(2.0), 100).pass);
  EXPECT_TRUE(validate_psi(PsiSpec::power(2.0, 1.0), 100).pass);
  // Psi(t) = sqrt(t): infinite derivative at 0
  EXPECT_FALSE(validate_psi(PsiSpec::power(1.0, 0.5), 100).pass);

  // Psi(t) = -t as a table
  const auto dec = PsiSpec::tabulated({0.0, 0.5, 1.0}, {0.0, -0.5, -1.0}, {-1.0, -1.0, -1.0});
  const auto r = validate_psi(dec, 100);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.monotone);

  // Psi(t) = t^3: derivative vanishes at the probe t = 0
  const auto cube = validate_psi(PsiSpec::power(1.0, 3.0), 100);
  EXPECT_FALSE(cube.pass);
  EXPECT_FALSE(cube.positive_derivative);
  EXPECT_TRUE(cube.monotone);

  // slopes far above the secant make the Hermite interpolant dip
  const auto bad = PsiSpec::tabulated({0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}, {4.0, 4.0, 4.0});
  const auto rb = validate_psi(bad, 100);
  EXPECT_FALSE(rb.pass);
  EXPECT_FALSE(rb.positive_derivative);
}
