#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "silvarisk/regimes.hpp"

namespace silvarisk {

/// Scenario file: both regimes plus the carbon rent price.
///
///   {
///     "rotation": {"rotation_age_years", "regeneration_cost", "harvest_revenue",
///                  "land_value", "tree_value_curve": {...}},
///     "ccf": {"gross_profit_rate", "capitalization", "carbon_stock_surplus_tons"},
///     "carbon_rent_per_ton_year": 0          (optional)
///   }
///
/// tree_value_curve is one of
///   {"type": "power", "exponent": g}
///   {"type": "calibrated", "target_expected_capitalization": C}
///   {"type": "table", "points": [[age, value], ...] or [{"age", "value"}, ...]}
///
/// Units: years, Eur/ha, Eur/(ha a), tons/ha, Eur/(ton a).
struct ConfigFile {
  RotationRegime rotation;
  CcfRegime ccf;
  double carbon_rent_per_ton_year = 0.0;
  // Set for "calibrated" curves.
  std::optional<double> calibrated_exponent;
};

/// Parses and validates a config document. Errors are ConfigError whose path
/// names the offending member, e.g. "$.rotation.land_value".
ConfigFile parse_config(std::string_view json_text);

/// Reads and parses a file; a missing or unreadable file is a ConfigError
/// whose path is the file name.
ConfigFile load_config(const std::filesystem::path& path);

/// Austrian spruce defaults, identical to the shipped austria_spruce.json.
ConfigFile default_config();

}  // namespace silvarisk
