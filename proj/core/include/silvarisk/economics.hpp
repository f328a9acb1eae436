#pragma once

#include <optional>
#include <vector>

#include "silvarisk/regimes.hpp"

namespace silvarisk {

/// Expected stationary economics of one regime at one disturbance rate.
///
/// capital_return_rate is always expected_gross_profit_rate divided by
/// expected_capitalization. The survival and density fields are only
/// meaningful for rotation forestry; for CCF they are 1, 0 and 0.
struct EconomicSummary {
  double expected_gross_profit_rate = 0.0;  // Eur/(ha a)
  double expected_capitalization = 0.0;     // Eur/ha
  double capital_return_rate = 0.0;         // 1/a
  double survival_to_harvest = 1.0;
  double density_at_zero = 0.0;      // 1/a
  double density_at_rotation = 0.0;  // 1/a
  // CCF: disturbance loss m*C exceeds gross profit plus rent.
  bool loss_exceeds_profit = false;

  bool operator==(const EconomicSummary&) const = default;
};

/// Rotation forestry under a constant stand-replacing hazard.
///
/// Revenue arrives only at harvest and cost only at (re)establishment, so the
/// expected profit rate is the harvest flux minus the regeneration flux of the
/// stationary age distribution, H p'(tau) - E p'(0). Destroyed stands yield no
/// salvage. The expected capitalization integrates land + V(a) against p'.
EconomicSummary rf_summary(const RotationRegime& regime, const Scenario& scenario);

/// Continuous-cover forestry: losses m*C are deducted from the profit rate
/// while the capitalization stays at its semi-stationary value. Carbon rent
/// adds price * surplus stock. Negative profit is returned as is with
/// loss_exceeds_profit set.
EconomicSummary ccf_summary(const CcfRegime& regime, const Scenario& scenario);

/// profit / capitalization; ParameterError unless capitalization > 0.
double capital_return_rate(double profit_rate, double capitalization);

/// Same quotient read as the return the market requires of an estate priced
/// at market_capitalization.
double implied_discount_rate(double profit_rate, double market_capitalization);

struct CashFlow {
  double time;    // years from the valuation date
  double amount;  // Eur/ha
};

/// Constant stream of `rate` Eur/(ha a) from t = 0 until `horizon` (forever
/// when empty).
struct CashFlowStream {
  double rate = 0.0;
  std::optional<double> horizon;
};

struct CashFlowSchedule {
  std::vector<CashFlow> impulses;
  std::optional<CashFlowStream> stream;
};

/// Continuously discounted value of the schedule. Throws NumericalError when
/// an infinite stream meets a nonpositive discount rate, ParameterError on
/// negative or non-finite times.
double present_value(const CashFlowSchedule& schedule, double discount_rate);

}  // namespace silvarisk
