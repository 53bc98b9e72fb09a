#include <gtest/gtest.h>

#include <cmath>

#include "hrv/constants.hpp"
#include "hrv/errors.hpp"
#include "hrv/rng.hpp"
#include "test_util.hpp"

using namespace hrv;
using hrv::test::vec;

namespace {

ConstantInputs in(int d, int dH, double p, double delta, double delta_prime) {
  return {d, dH, p, delta, delta_prime};
}

// Random tuple in the Rellich domain with the condition of the theorem.
ConstantInputs random_rellich(std::mt19937_64& g, bool equal) {
  for (;;) {
    int d = 2 + static_cast<int>(g() % 12);
    int dH = static_cast<int>(g() % static_cast<std::uint64_t>(d));
    double p = uniform(g, 1.05, 4.0);
    double a = uniform(g, 0.0, 1.95), b = equal ? a : uniform(g, 0.0, 1.95);
    ConstantInputs c = in(d, dH, p, a, b);
    if (rellich_constants(c).valid) return c;
  }
}

}  // namespace

TEST(Hardy, Examples) {
  auto h = hardy_constant(in(3, 0, 2, 0, 0));
  EXPECT_TRUE(h.valid);
  EXPECT_DOUBLE_EQ(h.a_p, 0.5);
  EXPECT_DOUBLE_EQ(h.a_p_pow, 0.25);
  EXPECT_FALSE(hardy_constant(in(2, 1, 2, 0, 0)).valid);
  auto h3 = hardy_constant(in(5, 1, 3, 2, 1));
  EXPECT_NEAR(h3.a_p, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(h3.a_p_pow, 8.0 / 27.0, 1e-15);
}

TEST(Hardy, ConvexDomainExamples) {
  auto c = hardy_constant_convex(2, 0, 0);
  EXPECT_TRUE(c.valid);
  EXPECT_DOUBLE_EQ(c.a_p_pow, 0.25);
  EXPECT_FALSE(hardy_constant_convex(2, 1, 1).valid);
  EXPECT_NEAR(hardy_constant_convex(4, 1, 2).a_p_pow, std::pow(0.25, 4), 1e-16);
}

TEST(Hardy, MonotoneInDimension) {
  auto g = make_engine(8);
  for (int it = 0; it < 200; ++it) {
    int d = 2 + static_cast<int>(g() % 10);
    double p = uniform(g, 1, 4), a = uniform(g, 0, 3), b = uniform(g, 0, 3);
    auto lo = hardy_constant(in(d, 0, p, a, b)), hi = hardy_constant(in(d + 1, 0, p, a, b));
    if (lo.valid) {
      EXPECT_GT(hi.a_p, lo.a_p);
    }
  }
}

TEST(Rellich, ExponentExamples) {
  auto e = rellich_exponents(2, 0, 0);
  EXPECT_DOUBLE_EQ(e.alpha, 2.0);
  EXPECT_DOUBLE_EQ(e.alpha_prime, 2.0);
  e = rellich_exponents(2, 1, 0);
  EXPECT_DOUBLE_EQ(e.alpha, 1.0);
  EXPECT_DOUBLE_EQ(e.alpha_prime, 2.0);
  EXPECT_DOUBLE_EQ(rellich_exponents(3, 0.5, 0.5).alpha, 3.0);
}

TEST(Rellich, BAlphaExamples) {
  EXPECT_DOUBLE_EQ(b_alpha(5, 0, 2, 2), 2.0);
  EXPECT_DOUBLE_EQ(b_alpha(5, 0, 0, 0), 0.0);
}

TEST(Rellich, BAlphaScalingIdentity) {
  auto g = make_engine(9);
  for (int it = 0; it < 500; ++it) {
    double dd = uniform(g, 1, 12), dmin = uniform(g, 0, 2), a = uniform(g, 0, 3), ap = uniform(g, 0, 3);
    double gam = uniform(g, -0.5, 2);
    double amax = std::max(a, ap);
    double lhs = b_alpha(dd, dmin, (1 + gam) * a, (1 + gam) * ap);
    double rhs = (1 + gam) * (b_alpha(dd, dmin, a, ap) - gam * amax * amax);
    EXPECT_NEAR(lhs, rhs, 1e-11 * (1 + std::abs(rhs)));
  }
}

TEST(Rellich, ChainedExampleD5) {
  auto r = rellich_constants(in(5, 0, 2, 0, 0));
  EXPECT_TRUE(r.valid);
  EXPECT_DOUBLE_EQ(r.exponents.alpha, 2.0);
  EXPECT_DOUBLE_EQ(r.b_alpha_p, 2.0);
  EXPECT_DOUBLE_EQ(r.gamma_p, 0.5);
  EXPECT_DOUBLE_EQ(r.c_p, 1.25);
  EXPECT_DOUBLE_EQ(r.C_p, 1.25);
}

TEST(Rellich, MixedExponentsBelowC) {
  auto r = rellich_constants(in(12, 0, 2, 0, 1));
  EXPECT_TRUE(r.valid);
  EXPECT_DOUBLE_EQ(r.condition_lhs, 8.0);
  EXPECT_DOUBLE_EQ(r.condition_rhs, 4.0);
  EXPECT_DOUBLE_EQ(r.C_p, 24.0);
  EXPECT_LE(r.c_p, 24.0);
}

TEST(Rellich, EqualExponentsMonotoneInDelta) {
  for (double p : {1.5, 2.0, 3.0}) {
    double prev = -1e300;
    for (double delta = 0.0; delta < 1.99; delta += 0.05) {
      auto r = rellich_constants(in(9, 0, p, delta, delta));
      double closed = (p - 1) * 9 * (9 + p * delta - 2 * p) / (p * p);
      EXPECT_NEAR(r.C_p, closed, 1e-12 * (1 + std::abs(closed)));
      EXPECT_GT(r.C_p, prev);
      prev = r.C_p;
    }
  }
}

TEST(Rellich, MixedZeroClosedForm) {
  // delta = 0 reduces to the common value at (0, 0)
  EXPECT_NEAR(rellich_constant_mixed_zero(7, 2, 0), rellich_constants(in(7, 0, 2, 0, 0)).C_p, 1e-14);
  EXPECT_NEAR(rellich_constant_mixed_zero(12, 2, 1), 3.0, 1e-14);
  // agreement with the general chain at (delta, 0) and (0, delta)
  auto g = make_engine(12);
  int checked = 0;
  for (int it = 0; it < 400; ++it) {
    int dd = 3 + static_cast<int>(g() % 12);
    double p = uniform(g, 1.1, 3.5), delta = uniform(g, 0, 1.9);
    auto r1 = rellich_constants(in(dd, 0, p, delta, 0));
    auto r2 = rellich_constants(in(dd, 0, p, 0, delta));
    if (!r1.valid) continue;
    ++checked;
    double m = rellich_constant_mixed_zero(dd, p, delta);
    EXPECT_NEAR(r1.c_p, m, 1e-12 * (1 + std::abs(m)));
    EXPECT_NEAR(r2.c_p, m, 1e-12 * (1 + std::abs(m)));
  }
  EXPECT_GT(checked, 100);
}

TEST(Rellich, EqualExponentsGiveCEqualsC) {
  auto g = make_engine(13);
  for (int it = 0; it < 500; ++it) {
    auto c = random_rellich(g, true);
    auto r = rellich_constants(c);
    EXPECT_NEAR(r.c_p, r.C_p, 1e-12 * (1 + std::abs(r.C_p)));
  }
}

TEST(Rellich, SmallConstantNeverExceedsLarge) {
  auto g = make_engine(14);
  for (int it = 0; it < 1000; ++it) {
    auto r = rellich_constants(random_rellich(g, false));
    EXPECT_LE(r.c_p, r.C_p + 1e-12 * (1 + std::abs(r.C_p)));
  }
}

TEST(Rellich, PositiveInStrictInterior) {
  auto g = make_engine(15);
  int checked = 0;
  for (int it = 0; it < 1000; ++it) {
    auto r = rellich_constants(random_rellich(g, false));
    if (r.condition_lhs <= r.condition_rhs + 1e-6) continue;
    ++checked;
    EXPECT_GT(r.c_p, 0.0);
  }
  EXPECT_GT(checked, 500);
}

TEST(Rellich, DomainErrors) {
  EXPECT_THROW(rellich_constants(in(5, 0, 2, 3, 0)), ConfigError);
  EXPECT_THROW(rellich_constants(in(5, 0, 2, 0, 2)), ConfigError);
  EXPECT_THROW(rellich_constants(in(5, 0, 1, 0, 0)), ConfigError);
}

TEST(RellichL2, Examples) {
  auto r = rellich_l2_constant(in(6, 0, 2, 0, 0));
  EXPECT_TRUE(r.valid);
  EXPECT_DOUBLE_EQ(r.a_2, 2.0);
  EXPECT_DOUBLE_EQ(r.nu, 1.0);
  EXPECT_DOUBLE_EQ(r.via_hardy, 9.0);
  EXPECT_DOUBLE_EQ(r.via_closed, 9.0);
  auto C = rellich_constants(in(6, 0, 2, 0, 0)).C_p;
  EXPECT_DOUBLE_EQ(C * C, 9.0);
  auto b = rellich_l2_constant(in(6, 0, 2, 2, 2));
  EXPECT_DOUBLE_EQ(b.nu, 0.0);
  EXPECT_DOUBLE_EQ(b.via_hardy, std::pow(b.a_2, 4));
}

TEST(RellichL2, IdentityOverRandomGrid) {
  auto g = make_engine(16);
  for (int it = 0; it < 1000; ++it) {
    int d = 2 + static_cast<int>(g() % 15);
    int dH = static_cast<int>(g() % static_cast<std::uint64_t>(d));
    auto r = rellich_l2_constant(in(d, dH, 2, uniform(g, 0, 1.99), uniform(g, 0, 1.99)));
    EXPECT_NEAR(r.via_hardy, r.via_closed, 1e-12 * (1 + r.via_closed));
  }
}

TEST(Optimality, HardyCases) {
  auto point3 = make_spec(ConvexBody::point(vec({0, 0, 0})), 2, {0, 0});
  auto s = optimal_hardy_case(point3.case_inputs());
  EXPECT_EQ(s.kind, OptimalKind::Exact);
  EXPECT_DOUBLE_EQ(s.lower, 0.25);
  EXPECT_DOUBLE_EQ(s.upper, 0.25);

  auto line4 = make_spec(ConvexBody::line(4), 2, {0, 1});
  s = optimal_hardy_case(line4.case_inputs());
  EXPECT_EQ(s.kind, OptimalKind::Exact);
  EXPECT_DOUBLE_EQ(s.lower, 0.25);

  // quadrant times a bounded interval: k = 3, k_inf = 2, delta > delta'
  const double inf = std::numeric_limits<double>::infinity();
  auto slab = make_spec(ConvexBody::box(vec({0, 0, 0, -1}), vec({inf, inf, 1, 1})), 2, {1.5, 1.2});
  ASSERT_TRUE(hardy_constant(slab.inputs()).valid);
  s = optimal_hardy_case(slab.case_inputs());
  EXPECT_NE(s.kind, OptimalKind::Exact);
}

TEST(Optimality, RellichCases) {
  auto point5 = make_spec(ConvexBody::point(vec({0, 0, 0, 0, 0})), 2, {0, 0});
  auto s = optimal_rellich_case(point5.case_inputs());
  EXPECT_EQ(s.kind, OptimalKind::Exact);
  EXPECT_DOUBLE_EQ(s.lower, 1.5625);

  auto line6 = make_spec(ConvexBody::line(6), 2, {1, 1});
  s = optimal_rellich_case(line6.case_inputs());
  EXPECT_EQ(s.kind, OptimalKind::Exact);
  EXPECT_DOUBLE_EQ(s.lower, std::pow(5.0 * 3.0 / 4.0, 2));

  auto mixed = make_spec(ConvexBody::point(vec({0, 0, 0, 0, 0, 0, 0, 0})), 3, {0.2, 0.5});
  s = optimal_rellich_case(mixed.case_inputs());
  EXPECT_EQ(s.kind, OptimalKind::Bracket);
}

TEST(ConstantsReport, InvalidRellichIsFlaggedNotThrown) {
  auto spec = make_spec(ConvexBody::point(vec({0, 0, 0})), 2, {3, 3});
  auto r = constants_report(spec.case_inputs());
  EXPECT_FALSE(r.rellich_domain_ok);
  EXPECT_TRUE(r.hardy.valid);
}
