#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hrv/quadrature.hpp"
#include "hrv/rng.hpp"

using namespace hrv;

TEST(GaussKronrod, PolynomialsExact) {
  // a single 15-point Kronrod panel integrates degree 22 exactly
  auto r = quad::gauss_kronrod([](double x) { return std::pow(x, 10) - 3 * x * x + 1; }, -1.0, 2.0, 1e-14);
  EXPECT_NEAR(r.value, (std::pow(2.0, 11) + 1.0) / 11.0 - 9.0 + 3.0, 1e-11);
  EXPECT_TRUE(r.converged);
}

TEST(GaussKronrod, SmoothAndEndpointSingular) {
  auto r = quad::gauss_kronrod([](double x) { return std::exp(-x * x); }, 0.0, 5.0, 1e-12);
  EXPECT_NEAR(r.value, 0.5 * std::sqrt(std::numbers::pi) * std::erf(5.0), 1e-12);
  auto s = quad::gauss_kronrod([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 0.0, 400000);
  EXPECT_NEAR(s.value, 2.0, 1e-8);
}

TEST(GaussKronrod, BudgetExhaustionIsReported) {
  auto r = quad::gauss_kronrod([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, 1e-14, 0.0, 300);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.evals, 330);
}

TEST(GaussKronrod, ErrorEstimateIsHonest) {
  auto g = make_engine(4);
  for (int it = 0; it < 50; ++it) {
    double a = uniform(g, 0.5, 5), w = uniform(g, 1, 30);
    auto f = [&](double x) { return std::cos(w * x) * std::exp(-a * x); };
    double exact = (a - std::exp(-a) * (a * std::cos(w) - w * std::sin(w))) / (a * a + w * w);
    auto r = quad::gauss_kronrod(f, 0.0, 1.0, 1e-9);
    EXPECT_LE(std::abs(r.value - exact), std::max(r.error, 1e-15));
  }
}

TEST(IntegrateKnots, KinkAtKnot) {
  auto f = [](double x) { return std::abs(x - 0.3); };
  auto r = quad::integrate_knots(f, {0.0, 0.3, 1.0}, 1e-13);
  EXPECT_NEAR(r.value, 0.5 * 0.09 + 0.5 * 0.49, 1e-14);
  EXPECT_LE(r.evals, 60);
}

TEST(IntegrateLog, ManyDecades) {
  // int_{1e-30}^{1e30} dr / (r (1 + log^2 r))
  auto f = [](double r) {
    double l = std::log(r);
    return 1.0 / (r * (1.0 + l * l));
  };
  double L = 30 * std::log(10.0);
  auto r = quad::integrate_log(f, {1e-30, 1.0, 1e30}, 1e-12);
  EXPECT_NEAR(r.value, 2.0 * std::atan(L), 1e-11);
}

TEST(GaussLegendre, NodesAndWeights) {
  for (int n : {1, 2, 5, 16, 40}) {
    auto R = quad::gauss_legendre(n);
    ASSERT_EQ(static_cast<int>(R.x.size()), n);
    double w = 0, m2 = 0;
    for (int i = 0; i < n; ++i) {
      w += R.w[i];
      m2 += R.w[i] * R.x[i] * R.x[i];
    }
    EXPECT_NEAR(w, 2.0, 1e-13);
    if (n >= 2) {
      EXPECT_NEAR(m2, 2.0 / 3.0, 1e-13);
    }
  }
}
