#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "silvarisk/regimes.hpp"

namespace silvarisk {

// Monte Carlo renewal-process simulator. It shares no code with the analytic
// density or quadrature: stand trajectories are simulated event by event and
// value-curve integrals are taken in closed form per segment.

struct OracleConfig {
  std::size_t replicates = 10000;
  double horizon = 6000.0;  // years; must exceed 10 rotations for RF
  std::uint64_t seed = 42;
  double burn_in = 0.0;  // years discarded from the time averages
  // Worker threads; 0 picks hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

struct OracleEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t replicates = 0;
};

struct RfOracleResult {
  OracleEstimate profit_rate;     // Eur/(ha a)
  OracleEstimate capitalization;  // Eur/ha, time average
  OracleEstimate survival;        // share of cycles ending in final harvest
};

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  double frequency = 0.0;  // share of post-burn-in time spent in the bin
  double standard_error = 0.0;
};

/// Simulates `replicates` independent stands from a stationary initial age.
/// Replicate r draws from a generator seeded from (seed, r), so results are
/// bit-identical for identical inputs regardless of thread count.
RfOracleResult simulate_rf(const RotationRegime& regime, const Scenario& scenario,
                           const OracleConfig& config);

/// Time-averaged CCF cash flow with Poisson(m) stand-replacement events, each
/// costing one full capitalization.
OracleEstimate simulate_ccf(const CcfRegime& regime, const Scenario& scenario,
                            const OracleConfig& config);

/// Time-occupancy histogram of stand age over `bins` equal-width bins of
/// [0, tau]. Requires bins >= 2.
std::vector<HistogramBin> empirical_age_histogram(const RotationRegime& regime,
                                                  const Scenario& scenario,
                                                  const OracleConfig& config,
                                                  std::size_t bins);

}  // namespace silvarisk
