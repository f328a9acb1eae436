#include <cmath>

#include <gtest/gtest.h>

#include "silvarisk/age_density.hpp"
#include "silvarisk/economics.hpp"
#include "silvarisk/errors.hpp"
#include "silvarisk/oracle.hpp"
#include "test_support.hpp"

namespace silvarisk {
namespace {

using testing::kRate;

OracleConfig config(std::size_t replicates, std::uint64_t seed = 42, unsigned threads = 0) {
  return {.replicates = replicates, .horizon = 6000.0, .seed = seed, .burn_in = 0.0,
          .threads = threads};
}

void expect_within(const OracleEstimate& e, double analytic, double k, const char* what) {
  EXPECT_LE(std::abs(e.mean - analytic), k * e.standard_error)
      << what << ": estimate " << e.mean << " analytic " << analytic << " se "
      << e.standard_error;
}

TEST(OracleRf, UndisturbedIsDeterministic) {
  const RfOracleResult r =
      simulate_rf(austria_spruce_rotation(), {0.0, 0.0}, config(1, 7));
  EXPECT_NEAR(r.profit_rate.mean, 16000.0 / 60.0, 1e-9);
  EXPECT_EQ(r.survival.mean, 1.0);
  EXPECT_NEAR(r.capitalization.mean / 21000.0, 1.0, 1e-12);
  EXPECT_EQ(r.profit_rate.replicates, 1u);
}

TEST(OracleRf, UndisturbedManyReplicatesHaveNoSpread) {
  const RfOracleResult r =
      simulate_rf(austria_spruce_rotation(), {0.0, 0.0}, config(200));
  EXPECT_NEAR(r.profit_rate.mean, 16000.0 / 60.0, 1e-9);
  EXPECT_LT(r.profit_rate.standard_error, 1e-9);
  EXPECT_EQ(r.survival.standard_error, 0.0);
}

TEST(OracleRf, MatchesAnalyticAtReferenceRate) {
  const RotationRegime regime = austria_spruce_rotation();
  const EconomicSummary analytic = rf_summary(regime, {kRate, 0.0});
  const RfOracleResult r = simulate_rf(regime, {kRate, 0.0}, config(10000));
  expect_within(r.profit_rate, analytic.expected_gross_profit_rate, 3.0, "profit");
  expect_within(r.capitalization, analytic.expected_capitalization, 3.0, "capitalization");
  expect_within(r.survival, analytic.survival_to_harvest, 3.0, "survival");
}

TEST(OracleRf, TableCurveMatchesAnalytic) {
  RotationParameters p = austria_spruce_rotation_parameters();
  const RotationRegime regime(p, TreeValueCurve::table({{0, 0}, {25, 3000}, {60, 18000}}));
  const EconomicSummary analytic = rf_summary(regime, {0.01, 0.0});
  const RfOracleResult r = simulate_rf(regime, {0.01, 0.0}, config(4000, 11));
  expect_within(r.capitalization, analytic.expected_capitalization, 4.0, "capitalization");
  expect_within(r.profit_rate, analytic.expected_gross_profit_rate, 4.0, "profit");
}

TEST(OracleRf, ReproducibleAndThreadIndependent) {
  const RotationRegime regime = austria_spruce_rotation();
  const RfOracleResult a = simulate_rf(regime, {kRate, 0.0}, config(500, 99, 1));
  const RfOracleResult b = simulate_rf(regime, {kRate, 0.0}, config(500, 99, 7));
  const RfOracleResult c = simulate_rf(regime, {kRate, 0.0}, config(500, 99, 0));
  for (const RfOracleResult* x : {&b, &c}) {
    EXPECT_EQ(a.profit_rate.mean, x->profit_rate.mean);
    EXPECT_EQ(a.profit_rate.standard_error, x->profit_rate.standard_error);
    EXPECT_EQ(a.capitalization.mean, x->capitalization.mean);
    EXPECT_EQ(a.survival.mean, x->survival.mean);
    EXPECT_EQ(a.survival.standard_error, x->survival.standard_error);
  }
  const RfOracleResult d = simulate_rf(regime, {kRate, 0.0}, config(500, 100, 1));
  EXPECT_NE(a.profit_rate.mean, d.profit_rate.mean);
}

TEST(OracleRf, StandardErrorShrinksAsRootN) {
  const RotationRegime regime = austria_spruce_rotation();
  const RfOracleResult small = simulate_rf(regime, {kRate, 0.0}, config(1000, 5));
  const RfOracleResult large = simulate_rf(regime, {kRate, 0.0}, config(4000, 6));
  for (auto [s, l] : {std::pair{small.profit_rate, large.profit_rate},
                      std::pair{small.capitalization, large.capitalization},
                      std::pair{small.survival, large.survival}}) {
    EXPECT_NEAR(s.standard_error / l.standard_error, 2.0, 0.3);
  }
}

TEST(OracleRf, BurnInWindowStillUnbiased) {
  const RotationRegime regime = austria_spruce_rotation();
  OracleConfig c = config(3000, 3);
  c.burn_in = 600.0;
  const EconomicSummary analytic = rf_summary(regime, {kRate, 0.0});
  const RfOracleResult r = simulate_rf(regime, {kRate, 0.0}, c);
  expect_within(r.profit_rate, analytic.expected_gross_profit_rate, 4.0, "profit");
  expect_within(r.survival, analytic.survival_to_harvest, 4.0, "survival");
}

TEST(OracleRf, RejectsInvalidConfig) {
  const RotationRegime regime = austria_spruce_rotation();
  EXPECT_THROW(simulate_rf(regime, {kRate, 0.0}, config(0)), ParameterError);
  OracleConfig short_horizon = config(10);
  short_horizon.horizon = 600.0;  // not more than 10 rotations
  EXPECT_THROW(simulate_rf(regime, {kRate, 0.0}, short_horizon), ParameterError);
  OracleConfig burn = config(10);
  burn.burn_in = 6000.0;
  EXPECT_THROW(simulate_rf(regime, {kRate, 0.0}, burn), ParameterError);
  EXPECT_THROW(simulate_rf(regime, {-kRate, 0.0}, config(10)), ParameterError);
}

TEST(OracleCcf, UndisturbedIsExact) {
  const OracleEstimate e = simulate_ccf(austria_spruce_ccf(), {0.0, 0.0}, config(50));
  EXPECT_EQ(e.mean, 154.0);
  EXPECT_EQ(e.standard_error, 0.0);
}

TEST(OracleCcf, MatchesLossRate) {
  const OracleEstimate e = simulate_ccf(austria_spruce_ccf(), {kRate, 0.0}, config(10000));
  expect_within(e, 154.0 - 24000.0 / 180.0, 3.0, "ccf profit");
  const OracleEstimate rent = simulate_ccf(austria_spruce_ccf(), {kRate, 2.0}, config(10000));
  expect_within(rent, 254.0 - 24000.0 / 180.0, 3.0, "ccf profit with rent");
}

TEST(OracleHistogram, UniformWithoutDisturbance) {
  const auto bins =
      empirical_age_histogram(austria_spruce_rotation(), {0.0, 0.0}, config(200), 6);
  ASSERT_EQ(bins.size(), 6u);
  for (const HistogramBin& b : bins) EXPECT_NEAR(b.frequency, 1.0 / 6.0, 1e-9);
  EXPECT_EQ(bins.front().lower, 0.0);
  EXPECT_EQ(bins.back().upper, 60.0);
}

TEST(OracleHistogram, MatchesDensityIntegrals) {
  const auto bins =
      empirical_age_histogram(austria_spruce_rotation(), {kRate, 0.0}, config(4000), 6);
  const AgeDensity d(60.0, kRate);
  double total = 0.0;
  for (const HistogramBin& b : bins) {
    EXPECT_NEAR(b.frequency, d.probability_between(b.lower, b.upper), 4.0 * b.standard_error)
        << "[" << b.lower << ", " << b.upper << ")";
    total += b.frequency;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(bins.front().frequency, testing::frozen::kFirstBinMass,
              4.0 * bins.front().standard_error);
  EXPECT_NEAR(bins.back().frequency, testing::frozen::kLastBinMass,
              4.0 * bins.back().standard_error);
}

TEST(OracleHistogram, NeedsTwoBins) {
  EXPECT_THROW(empirical_age_histogram(austria_spruce_rotation(), {kRate, 0.0}, config(10), 1),
               ParameterError);
}

}  // namespace
}  // namespace silvarisk
