#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "hrv/errors.hpp"
#include "hrv/kernels.hpp"
#include "hrv/rng.hpp"

using namespace hrv;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> random_values(std::mt19937_64& g, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(g, lo, hi);
  return v;
}

// Lengths around the vector width and its tails.
const std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 8, 9, 15, 16, 17, 63, 64, 65, 1000, 4099};

}  // namespace

TEST(Kernels, ScalarSumIsCompensated) {
  // 1 + 1e-16 repeated: naive summation loses every small term
  std::vector<double> v(4001, 1e-16);
  v[0] = 1.0;
  EXPECT_NEAR(kernels::scalar::sum(v.data(), v.size()), 1.0 + 4000e-16, 1e-16);
  std::vector<double> c{1e100, 1.0, -1e100, 1.0};
  EXPECT_EQ(kernels::scalar::sum(c.data(), c.size()), 2.0);
}

TEST(Kernels, ScalarDistancesMatchDirectFormulas) {
  auto g = make_engine(31);
  const std::size_t n = 100;
  const int d = 3;
  auto pts = random_values(g, n * d, -5, 5);
  std::vector<double> c{0.5, -1.0, 2.0}, lo{-1, -1, -1}, hi{1, 2, INFINITY}, out(n);
  kernels::scalar::distance_ball(pts.data(), n, d, c.data(), 1.5, out.data());
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0;
    for (int j = 0; j < d; ++j) r += std::pow(pts[j * n + i] - c[j], 2);
    EXPECT_NEAR(out[i], std::max(std::sqrt(r) - 1.5, 0.0), 1e-14);
  }
  kernels::scalar::distance_box(pts.data(), n, d, lo.data(), hi.data(), out.data());
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0;
    for (int j = 0; j < d; ++j) {
      double x = pts[j * n + i];
      double e = x < lo[j] ? lo[j] - x : (x > hi[j] ? x - hi[j] : 0.0);
      r += e * e;
    }
    EXPECT_NEAR(out[i], std::sqrt(r), 1e-14);
  }
}

class Avx2Equivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!kernels::avx2_supported()) GTEST_SKIP() << "CPU lacks AVX2";
  }
};

TEST_F(Avx2Equivalence, SumBitIdentical) {
  auto g = make_engine(32);
  for (std::size_t n : kSizes) {
    for (int rep = 0; rep < 5; ++rep) {
      auto v = random_values(g, n, -1e6, 1e6);
      for (std::size_t i = 0; i < n; i += 7) v[i] *= 1e-12;  // mixed magnitudes
      EXPECT_TRUE(same_bits(kernels::scalar::sum(v.data(), n), kernels::avx2::sum(v.data(), n))) << n;
    }
  }
}

TEST_F(Avx2Equivalence, DistancesBitIdentical) {
  auto g = make_engine(33);
  for (int d : {1, 2, 3, 5}) {
    for (std::size_t n : kSizes) {
      auto pts = random_values(g, n * d, -3, 3);
      auto c = random_values(g, d, -1, 1), lo = random_values(g, d, -2, -0.5), hi = random_values(g, d, 0.5, 2);
      hi[0] = INFINITY;
      if (d > 1) lo[1] = -INFINITY;
      std::vector<double> a(n), b(n);
      for (double radius : {0.0, 0.7}) {
        kernels::scalar::distance_ball(pts.data(), n, d, c.data(), radius, a.data());
        kernels::avx2::distance_ball(pts.data(), n, d, c.data(), radius, b.data());
        for (std::size_t i = 0; i < n; ++i) ASSERT_TRUE(same_bits(a[i], b[i])) << d << " " << n << " " << i;
      }
      kernels::scalar::distance_box(pts.data(), n, d, lo.data(), hi.data(), a.data());
      kernels::avx2::distance_box(pts.data(), n, d, lo.data(), hi.data(), b.data());
      for (std::size_t i = 0; i < n; ++i) ASSERT_TRUE(same_bits(a[i], b[i])) << d << " " << n << " " << i;
    }
  }
}

TEST_F(Avx2Equivalence, DispatchFollowsOverride) {
  auto g = make_engine(34);
  auto v = random_values(g, 1001, -1, 1);
  const kernels::Isa before = kernels::active_isa();
  kernels::set_isa(kernels::Isa::Scalar);
  EXPECT_EQ(kernels::active_isa(), kernels::Isa::Scalar);
  double s = kernels::sum(v.data(), v.size());
  kernels::set_isa(kernels::Isa::Avx2);
  EXPECT_EQ(kernels::active_isa(), kernels::Isa::Avx2);
  EXPECT_TRUE(same_bits(s, kernels::sum(v.data(), v.size())));
  kernels::set_isa(before);
}
