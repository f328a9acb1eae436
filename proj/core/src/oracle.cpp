#include "silvarisk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <thread>

#include "silvarisk/errors.hpp"

namespace silvarisk {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-replicate stream. mt19937_64 output is fixed by the standard; the
// distributions below are written out so results do not depend on the
// standard library implementation.
class ReplicateStream {
 public:
  ReplicateStream(std::uint64_t seed, std::uint64_t replicate)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(replicate + 0x5851f42d4c957f2dULL))) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double exponential(double rate) {
    if (rate == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log1p(-uniform()) / rate;
  }

 private:
  std::mt19937_64 engine_;
};

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

OracleEstimate summarize(std::span<const double> xs) {
  OracleEstimate e;
  e.replicates = xs.size();
  const double n = static_cast<double>(xs.size());
  e.mean = pairwise_sum(xs) / n;
  if (xs.size() > 1) {
    std::vector<double> sq(xs.size());
    std::transform(xs.begin(), xs.end(), sq.begin(),
                   [&](double x) { return (x - e.mean) * (x - e.mean); });
    e.standard_error = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
  }
  return e;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) fn(i);
    });
  }
}

void validate(const OracleConfig& config, double min_horizon) {
  if (config.replicates == 0) throw ParameterError("oracle needs at least one replicate");
  if (!std::isfinite(config.horizon) || !(config.horizon > min_horizon)) {
    throw ParameterError("oracle horizon " + std::to_string(config.horizon) +
                         " must exceed " + std::to_string(min_horizon));
  }
  if (!std::isfinite(config.burn_in) || config.burn_in < 0.0 ||
      !(config.horizon > config.burn_in)) {
    throw ParameterError("oracle burn-in must be >= 0 and below the horizon");
  }
}

// Age drawn from m exp(-a m) / (1 - exp(-tau m)) on [0, tau] by inversion.
double stationary_age(ReplicateStream& rng, double tau, double m) {
  const double u = rng.uniform();
  if (m == 0.0) return u * tau;
  return std::min(tau, -std::log1p(u * std::expm1(-tau * m)) / m);
}

struct RfTally {
  double cash = 0.0;
  double capitalization_time = 0.0;
  double harvests = 0.0;
  double cycles = 0.0;
};

// One stand trajectory over [0, horizon]. on_segment(age_from, age_to) is
// called for every age interval lived inside [burn_in, horizon].
//
// Survival counts cycles that start at a renewal inside [burn_in, horizon);
// each such cycle's outcome is decided by its first disturbance draw, so it is
// counted even when it ends past the horizon.
template <class OnSegment>
RfTally simulate_stand(const RotationRegime& regime, double m, const OracleConfig& config,
                       std::uint64_t replicate, OnSegment&& on_segment) {
  ReplicateStream rng(config.seed, replicate);
  const double tau = regime.rotation_age();
  const double net_harvest = regime.harvest_revenue() - regime.regeneration_cost();
  const double window_begin = config.burn_in;
  const double window_end = config.horizon;

  RfTally tally;
  double t = 0.0;
  double age = stationary_age(rng, tau, m);
  bool counted_cycle = false;
  for (;;) {
    const double to_disturbance = rng.exponential(m);
    const double to_harvest = tau - age;
    const bool harvested = to_disturbance >= to_harvest;
    const double end = t + (harvested ? to_harvest : to_disturbance);

    const double lo = std::max(t, window_begin);
    const double hi = std::min(end, window_end);
    if (hi > lo) {
      const double a1 = harvested && hi == end ? tau : std::min(tau, age + (hi - t));
      const double a0 = std::min(a1, age + (lo - t));
      tally.capitalization_time += capitalization_integral(regime, a0, a1);
      on_segment(a0, a1);
    }
    if (counted_cycle) {
      tally.cycles += 1.0;
      if (harvested) tally.harvests += 1.0;
    }
    if (end >= window_end) break;
    if (end >= window_begin) {
      tally.cash += harvested ? net_harvest : -regime.regeneration_cost();
    }
    t = end;
    age = 0.0;
    counted_cycle = end >= window_begin;
  }
  return tally;
}

}  // namespace

RfOracleResult simulate_rf(const RotationRegime& regime, const Scenario& scenario,
                           const OracleConfig& config) {
  scenario.validate();
  validate(config, 10.0 * regime.rotation_age());
  const std::size_t n = config.replicates;
  const double window = config.horizon - config.burn_in;

  std::vector<double> profit(n), capitalization(n), harvests(n), cycles(n);
  parallel_for(n, config.threads, [&](std::size_t r) {
    const RfTally tally =
        simulate_stand(regime, scenario.disturbance_rate, config, r, [](double, double) {});
    profit[r] = tally.cash / window;
    capitalization[r] = tally.capitalization_time / window;
    harvests[r] = tally.harvests;
    cycles[r] = tally.cycles;
  });

  RfOracleResult result;
  result.profit_rate = summarize(profit);
  result.capitalization = summarize(capitalization);

  // Pooled ratio estimator with its delta-method standard error.
  const double total_cycles = pairwise_sum(cycles);
  if (!(total_cycles > 0.0)) {
    throw NumericalError("oracle completed no rotation cycle; increase the horizon");
  }
  const double p = pairwise_sum(harvests) / total_cycles;
  std::vector<double> residual(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double d = harvests[r] - p * cycles[r];
    residual[r] = d * d;
  }
  const double mean_cycles = total_cycles / static_cast<double>(n);
  result.survival.mean = p;
  result.survival.replicates = n;
  result.survival.standard_error =
      n > 1 ? std::sqrt(pairwise_sum(residual) /
                        (static_cast<double>(n) * static_cast<double>(n - 1))) /
                  mean_cycles
            : 0.0;
  return result;
}

OracleEstimate simulate_ccf(const CcfRegime& regime, const Scenario& scenario,
                            const OracleConfig& config) {
  regime.validate();
  scenario.validate();
  validate(config, 0.0);
  const double m = scenario.disturbance_rate;
  const double income =
      regime.gross_profit_rate + scenario.carbon_rent_price * regime.carbon_stock_surplus;
  const double window = config.horizon - config.burn_in;

  std::vector<double> profit(config.replicates);
  parallel_for(config.replicates, config.threads, [&](std::size_t r) {
    ReplicateStream rng(config.seed, r);
    double events = 0.0;
    for (double t = rng.exponential(m); t < config.horizon; t += rng.exponential(m)) {
      if (t >= config.burn_in) events += 1.0;
    }
    profit[r] = income - regime.capitalization * events / window;
  });
  return summarize(profit);
}

std::vector<HistogramBin> empirical_age_histogram(const RotationRegime& regime,
                                                  const Scenario& scenario,
                                                  const OracleConfig& config,
                                                  std::size_t bins) {
  if (bins < 2) throw ParameterError("histogram needs at least two bins");
  scenario.validate();
  validate(config, 10.0 * regime.rotation_age());
  const std::size_t n = config.replicates;
  const double tau = regime.rotation_age();
  const double width = tau / static_cast<double>(bins);
  const double window = config.horizon - config.burn_in;

  // occupancy[b * n + r]: time replicate r spent in bin b.
  std::vector<double> occupancy(bins * n, 0.0);
  parallel_for(n, config.threads, [&](std::size_t r) {
    simulate_stand(regime, scenario.disturbance_rate, config, r, [&](double a0, double a1) {
      auto first = static_cast<std::size_t>(a0 / width);
      for (std::size_t b = std::min(first, bins - 1); b < bins; ++b) {
        const double lo = b * width;
        const double hi = b + 1 == bins ? tau : (b + 1) * width;
        if (lo >= a1) break;
        const double overlap = std::min(a1, hi) - std::max(a0, lo);
        if (overlap > 0.0) occupancy[b * n + r] += overlap;
      }
    });
  });

  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    std::span<double> row(occupancy.data() + b * n, n);
    for (double& x : row) x /= window;
    const OracleEstimate e = summarize(row);
    out[b] = {.lower = b * width,
              .upper = b + 1 == bins ? tau : (b + 1) * width,
              .frequency = e.mean,
              .standard_error = e.standard_error};
  }
  return out;
}

}  // namespace silvarisk
