// Randomized invariants, seeded so any failure replays identically.

#include <cmath>

#include <gtest/gtest.h>

#include "silvarisk/age_density.hpp"
#include "silvarisk/economics.hpp"
#include "silvarisk/quadrature.hpp"
#include "test_support.hpp"

namespace silvarisk {
namespace {

using testing::Gen;
using testing::rel_diff;

constexpr double kTaus[] = {10.0, 30.0, 60.0, 90.0, 120.0};
constexpr double kRates[] = {0.0, 1e-6, 1.0 / 360.0, 1.0 / 180.0, 0.02, 0.1};

TEST(DensityProperties, NormalizedAcrossGrid) {
  for (double tau : kTaus) {
    for (double m : kRates) {
      const AgeDensity d(tau, m);
      const double mass = expected_over_age(d, [](double) { return 1.0; });
      EXPECT_LT(std::abs(mass - 1.0), 1e-9) << "tau " << tau << " m " << m;
      const double brute = testing::fixed_grid_simpson(
          [&](double a) { return testing::reference_density(tau, m, a); }, 0.0, tau, 2000);
      EXPECT_LT(std::abs(brute - 1.0), 1e-9) << "tau " << tau << " m " << m;
    }
  }
}

TEST(DensityProperties, RandomNormalizationAndPositivity) {
  Gen gen(1);
  for (int i = 0; i < 200; ++i) {
    const double tau = gen.uniform(10.0, 120.0);
    const double m = gen.uniform(0.0, 0.1);
    const AgeDensity d(tau, m);
    EXPECT_LT(std::abs(expected_over_age(d, [](double) { return 1.0; }) - 1.0), 1e-9);
    EXPECT_GE(d.pdf(gen.uniform(0.0, tau)), 0.0);
    // Tilt brackets the uniform density.
    EXPECT_GE(d.pdf(0.0), 1.0 / tau * (1.0 - 1e-15));
    EXPECT_LE(d.pdf(tau), 1.0 / tau * (1.0 + 1e-15));
  }
}

TEST(DensityProperties, BoundaryIdentity) {
  Gen gen(2);
  for (int i = 0; i < 500; ++i) {
    const double tau = gen.uniform(1.0, 200.0);
    const double m = i % 2 ? gen.log_uniform(1e-14, 1.0) : gen.uniform(0.0, 0.2);
    const AgeDensity d(tau, m);
    EXPECT_EQ(d.pdf(tau), d.pdf(0.0) * d.survival(tau));
  }
}

TEST(DensityProperties, ZeroHazardLimit) {
  for (double tau : kTaus) {
    const AgeDensity d(tau, 1e-12);
    for (int i = 0; i <= 100; ++i) {
      const double a = tau * i / 100.0;
      EXPECT_LT(std::abs(d.pdf(a) - 1.0 / tau), 1e-6);
    }
  }
}

TEST(DensityProperties, ContinuousAcrossSeriesSwitch) {
  // m * tau crosses 1e-8 between these two rates.
  for (double tau : kTaus) {
    const AgeDensity below(tau, 0.999e-8 / tau);
    const AgeDensity above(tau, 1.001e-8 / tau);
    for (double a : {0.0, tau / 3.0, tau}) {
      EXPECT_LT(rel_diff(below.pdf(a), above.pdf(a)), 1e-10);
    }
    EXPECT_NEAR(below.pdf(tau / 3.0), testing::reference_density(tau, 0.999e-8 / tau, tau / 3.0),
                1e-12);
  }
}

TEST(DensityProperties, MonotoneTilt) {
  Gen gen(3);
  for (int i = 0; i < 300; ++i) {
    const double tau = gen.uniform(10.0, 120.0);
    const double m1 = gen.uniform(0.0, 0.05);
    const double m2 = m1 + gen.uniform(1e-4, 0.05);
    const AgeDensity d1(tau, m1), d2(tau, m2);
    EXPECT_GT(d2.pdf(0.0), d1.pdf(0.0));
    EXPECT_LT(d2.pdf(tau), d1.pdf(tau));
  }
}

TEST(ExpectationProperties, LinearInIntegrand) {
  Gen gen(4);
  for (int i = 0; i < 50; ++i) {
    const AgeDensity d(gen.uniform(10.0, 120.0), gen.uniform(0.0, 0.1));
    const double alpha = gen.uniform(-5.0, 5.0), beta = gen.uniform(-5.0, 5.0);
    auto f = [](double a) { return std::sqrt(a) + 1.0; };
    auto g = [](double a) { return std::cos(a / 10.0) + 2.0; };
    const double lhs = expected_over_age(d, [&](double a) { return alpha * f(a) + beta * g(a); });
    const double rhs = alpha * expected_over_age(d, f) + beta * expected_over_age(d, g);
    EXPECT_LE(std::abs(lhs - rhs), 1e-9 * (std::abs(alpha) + std::abs(beta)) * 3.0);
  }
}

TEST(ExpectationProperties, MomentsMatchIncompleteGammaClosedForm) {
  for (double tau : kTaus) {
    for (double m : kRates) {
      const AgeDensity d(tau, m);
      for (int k = 0; k <= 2; ++k) {
        const double quad = expected_over_age(d, [k](double a) { return std::pow(a, k); });
        EXPECT_LT(rel_diff(quad, testing::reference_moment(tau, m, k)), 1e-8)
            << "tau " << tau << " m " << m << " k " << k;
      }
    }
  }
}

TEST(EconomicProperties, ReturnRatesAreScaleInvariant) {
  Gen gen(5);
  const RotationRegime rf = austria_spruce_rotation();
  const CcfRegime ccf = austria_spruce_ccf();
  for (int i = 0; i < 30; ++i) {
    const double s = gen.log_uniform(1e-3, 1e3);
    const Scenario sc{gen.uniform(0.0, 0.02), 0.0};
    const EconomicSummary a = rf_summary(rf, sc);
    const EconomicSummary b = rf_summary(rf.scaled(s), sc);
    EXPECT_LT(rel_diff(b.expected_gross_profit_rate, s * a.expected_gross_profit_rate), 1e-14);
    EXPECT_LT(rel_diff(b.expected_capitalization, s * a.expected_capitalization), 1e-9);
    EXPECT_LT(rel_diff(b.capital_return_rate, a.capital_return_rate), 1e-9);

    const EconomicSummary c = ccf_summary(ccf, sc);
    const EconomicSummary d = ccf_summary(ccf.scaled(s), sc);
    EXPECT_LT(std::abs(d.capital_return_rate - c.capital_return_rate),
              1e-15 * std::abs(c.expected_gross_profit_rate / c.expected_capitalization) + 1e-18);
  }
}

TEST(EconomicProperties, ReturnTimesCapitalizationIsProfit) {
  Gen gen(6);
  const RotationRegime rf = austria_spruce_rotation();
  const CcfRegime ccf = austria_spruce_ccf();
  for (int i = 0; i < 100; ++i) {
    const Scenario sc{gen.uniform(0.0, 0.05), gen.uniform(0.0, 5.0)};
    for (const EconomicSummary& s : {rf_summary(rf, sc), ccf_summary(ccf, sc)}) {
      // One rounding in the quotient, one in the product.
      EXPECT_LE(std::abs(s.capital_return_rate * s.expected_capitalization -
                         s.expected_gross_profit_rate),
                2.0 * std::numeric_limits<double>::epsilon() *
                    std::abs(s.expected_gross_profit_rate));
    }
  }
}

TEST(EconomicProperties, CcfProfitAffineInRate) {
  Gen gen(7);
  const CcfRegime ccf = austria_spruce_ccf();
  const double base = ccf_summary(ccf, {0.0, 0.0}).expected_gross_profit_rate;
  for (int i = 0; i < 200; ++i) {
    const double m = gen.uniform(0.0, 0.05);
    EXPECT_NEAR(ccf_summary(ccf, {m, 0.0}).expected_gross_profit_rate,
                base - ccf.capitalization * m, 1e-12);
  }
}

}  // namespace
}  // namespace silvarisk
