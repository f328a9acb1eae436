#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "silvarisk/economics.hpp"
#include "silvarisk/regimes.hpp"

namespace silvarisk {

/// Signed fractional changes against the first (normally undisturbed) row.
struct RelativeChanges {
  double rf_return = 0.0;
  double rf_profit = 0.0;
  double rf_capitalization = 0.0;
  double rf_survival = 0.0;
  double ccf_profit = 0.0;
  double density_at_zero = 0.0;
  double density_at_rotation = 0.0;

  bool operator==(const RelativeChanges&) const = default;
};

struct SweepRow {
  double disturbance_rate = 0.0;
  EconomicSummary rf;
  EconomicSummary ccf;            // without carbon rent
  EconomicSummary ccf_with_rent;  // rent * surplus stock added
  RelativeChanges relative_changes;

  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  double carbon_rent_price = 0.0;
  // False when rate_min > 0: relative changes then refer to a disturbed row.
  bool baseline_undisturbed = true;
  std::vector<SweepRow> rows;

  bool operator==(const SweepResult&) const = default;
};

/// Evaluates both regimes at `steps` evenly spaced disturbance rates from
/// rate_min to rate_max inclusive. Requires 0 <= rate_min < rate_max and
/// steps >= 2.
SweepResult run_sweep(const RotationRegime& rf, const CcfRegime& ccf, double carbon_rent_price,
                      double rate_min, double rate_max, std::size_t steps);

enum class OutputFormat { kCsv, kJson, kTable };

/// Fixed CSV header, without trailing newline.
std::string_view csv_header();

/// Ten significant digits, trailing zeros kept (printf "%#.10g").
std::string format_number(double value);

/// Writes the result; throws std::ios_base::failure if the stream fails.
void emit(const SweepResult& result, OutputFormat format, std::ostream& out);
std::string emit(const SweepResult& result, OutputFormat format);

/// Inverse of emit(..., kJson). Throws ConfigError naming the bad JSON path.
SweepResult parse_sweep_json(std::string_view text);

}  // namespace silvarisk
