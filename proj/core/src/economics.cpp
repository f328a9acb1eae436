#include "silvarisk/economics.hpp"

#include <cmath>
#include <string>

#include "silvarisk/age_density.hpp"
#include "silvarisk/errors.hpp"

namespace silvarisk {

EconomicSummary rf_summary(const RotationRegime& regime, const Scenario& scenario) {
  scenario.validate();
  const AgeDensity density(regime.rotation_age(), scenario.disturbance_rate);
  const double tau = regime.rotation_age();

  EconomicSummary s;
  s.density_at_zero = density.pdf(0.0);
  s.density_at_rotation = density.pdf(tau);
  s.survival_to_harvest = density.survival(tau);
  s.expected_gross_profit_rate = regime.harvest_revenue() * s.density_at_rotation -
                                 regime.regeneration_cost() * s.density_at_zero;
  s.expected_capitalization = expected_over_age(
      density, [&](double a) { return capitalization_at_age(regime, a); });
  s.capital_return_rate =
      capital_return_rate(s.expected_gross_profit_rate, s.expected_capitalization);
  return s;
}

EconomicSummary ccf_summary(const CcfRegime& regime, const Scenario& scenario) {
  regime.validate();
  scenario.validate();
  const double income =
      regime.gross_profit_rate + scenario.carbon_rent_price * regime.carbon_stock_surplus;
  const double loss = scenario.disturbance_rate * regime.capitalization;

  EconomicSummary s;
  s.expected_gross_profit_rate = income - loss;
  s.expected_capitalization = regime.capitalization;
  s.capital_return_rate =
      capital_return_rate(s.expected_gross_profit_rate, s.expected_capitalization);
  s.loss_exceeds_profit = loss > income;
  return s;
}

double capital_return_rate(double profit_rate, double capitalization) {
  if (!std::isfinite(capitalization) || !(capitalization > 0.0)) {
    throw ParameterError("capitalization must be > 0, got " + std::to_string(capitalization));
  }
  if (!std::isfinite(profit_rate)) {
    throw ParameterError("profit rate must be finite");
  }
  return profit_rate / capitalization;
}

double implied_discount_rate(double profit_rate, double market_capitalization) {
  return capital_return_rate(profit_rate, market_capitalization);
}

double present_value(const CashFlowSchedule& schedule, double discount_rate) {
  if (!std::isfinite(discount_rate)) {
    throw ParameterError("discount rate must be finite");
  }
  double total = 0.0;
  for (const CashFlow& cf : schedule.impulses) {
    if (!std::isfinite(cf.time) || cf.time < 0.0 || !std::isfinite(cf.amount)) {
      throw ParameterError("cash flow times must be finite and >= 0");
    }
    total += cf.amount * std::exp(-discount_rate * cf.time);
  }
  if (schedule.stream) {
    const CashFlowStream& s = *schedule.stream;
    if (!std::isfinite(s.rate)) throw ParameterError("stream rate must be finite");
    if (s.horizon) {
      const double T = *s.horizon;
      if (!std::isfinite(T) || T < 0.0) {
        throw ParameterError("stream horizon must be finite and >= 0");
      }
      // rate * (1 - exp(-rT)) / r, continuous at r = 0.
      total += discount_rate == 0.0
                   ? s.rate * T
                   : s.rate * -std::expm1(-discount_rate * T) / discount_rate;
    } else {
      if (!(discount_rate > 0.0)) {
        throw NumericalError("perpetual stream diverges at discount rate " +
                             std::to_string(discount_rate));
      }
      total += s.rate / discount_rate;
    }
  }
  return total;
}

}  // namespace silvarisk
