#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "silvarisk/age_density.hpp"
#include "silvarisk/config.hpp"
#include "silvarisk/economics.hpp"
#include "silvarisk/errors.hpp"
#include "silvarisk/oracle.hpp"
#include "silvarisk/sweep.hpp"

namespace silvarisk::cli {
namespace {

using nlohmann::json;

constexpr const char* kUnits =
    "Units: ages and rotation in years, money in Eur/ha, profit rates in Eur/(ha a),\n"
    "disturbance rates in 1/a, carbon stock in tons/ha, carbon rent in Eur/(ton a).";

// Usage errors raised after CLI11 parsing succeeded.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ConfigFile resolve_config(const std::string& flag) {
  if (!flag.empty()) return load_config(flag);
  if (const char* env = std::getenv("SILVARISK_CONFIG"); env != nullptr && *env != '\0') {
    return load_config(env);
  }
  return default_config();
}

void warn_about(const ConfigFile& config, const EconomicSummary& ccf, std::ostream& err) {
  if (config.rotation.has_nonpositive_margin()) {
    err << "warning: harvest revenue does not exceed regeneration cost\n";
  }
  if (ccf.loss_exceeds_profit) {
    err << "warning: CCF disturbance loss exceeds gross profit; profit is negative\n";
  }
}

json summary_json(const EconomicSummary& s) {
  return {
      {"expected_gross_profit_rate", s.expected_gross_profit_rate},
      {"expected_capitalization", s.expected_capitalization},
      {"capital_return_rate", s.capital_return_rate},
      {"survival_to_harvest", s.survival_to_harvest},
      {"density_at_zero", s.density_at_zero},
      {"density_at_rotation", s.density_at_rotation},
      {"loss_exceeds_profit", s.loss_exceeds_profit},
  };
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::string config;
  double disturbance_rate = 0.0;
  std::optional<double> carbon_rent;
  std::string format = "table";
};

int compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  const ConfigFile config = resolve_config(a.config);
  const double rent = a.carbon_rent.value_or(config.carbon_rent_per_ton_year);
  const Scenario bare{.disturbance_rate = a.disturbance_rate, .carbon_rent_price = 0.0};
  const Scenario rented{.disturbance_rate = a.disturbance_rate, .carbon_rent_price = rent};

  const EconomicSummary rf = rf_summary(config.rotation, bare);
  const EconomicSummary ccf = ccf_summary(config.ccf, bare);
  const EconomicSummary ccf_rent = ccf_summary(config.ccf, rented);
  warn_about(config, ccf, err);

  if (a.format == "json") {
    const json doc = {
        {"disturbance_rate", a.disturbance_rate},
        {"carbon_rent_price", rent},
        {"rf", summary_json(rf)},
        {"ccf", summary_json(ccf)},
        {"ccf_with_rent", summary_json(ccf_rent)},
    };
    out << doc.dump(2) << '\n';
  } else if (a.format == "csv") {
    out << "regime,profit,capitalization,return,survival,density_at_zero,"
           "density_at_rotation,loss_exceeds_profit\n";
    const auto row = [&](const char* name, const EconomicSummary& s) {
      out << name << ',' << format_number(s.expected_gross_profit_rate) << ','
          << format_number(s.expected_capitalization) << ','
          << format_number(s.capital_return_rate) << ','
          << format_number(s.survival_to_harvest) << ',' << format_number(s.density_at_zero)
          << ',' << format_number(s.density_at_rotation) << ','
          << (s.loss_exceeds_profit ? "true" : "false") << '\n';
    };
    row("rf", rf);
    row("ccf", ccf);
    row("ccf_with_rent", ccf_rent);
  } else {
    out << "disturbance rate " << std::setprecision(8) << a.disturbance_rate
        << " 1/a, carbon rent " << rent << " Eur/(ton a)\n";
    out << std::left << std::setw(16) << "regime" << std::right << std::setw(14) << "profit"
        << std::setw(16) << "capitalization" << std::setw(12) << "return" << std::setw(12)
        << "survival" << '\n';
    const auto row = [&](const char* name, const EconomicSummary& s, bool rotation) {
      out << std::left << std::setw(16) << name << std::right << std::fixed
          << std::setprecision(3) << std::setw(14) << s.expected_gross_profit_rate
          << std::setprecision(1) << std::setw(16) << s.expected_capitalization
          << std::setprecision(6) << std::setw(12) << s.capital_return_rate;
      if (rotation) {
        out << std::setprecision(5) << std::setw(12) << s.survival_to_harvest;
      } else {
        out << std::setw(12) << "-";
      }
      out << '\n';
    };
    row("RF", rf, true);
    row("CCF", ccf, false);
    row("CCF+rent", ccf_rent, false);
    out << std::defaultfloat;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string config;
  double rate_min = 0.0;
  double rate_max = 1.0 / 180.0;
  long long steps = 51;
  std::optional<double> carbon_rent;
  std::string output = "-";
  std::string format = "csv";
};

int sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  if (a.steps < 2) throw UsageError("--steps must be at least 2");
  if (!(a.rate_min >= 0.0 && a.rate_min < a.rate_max)) {
    throw UsageError("--rate-min must be >= 0 and below --rate-max");
  }
  const ConfigFile config = resolve_config(a.config);
  const double rent = a.carbon_rent.value_or(config.carbon_rent_per_ton_year);
  const SweepResult result = run_sweep(config.rotation, config.ccf, rent, a.rate_min,
                                       a.rate_max, static_cast<std::size_t>(a.steps));
  if (!result.baseline_undisturbed) {
    err << "warning: rate-min > 0; relative changes refer to the first row\n";
  }
  const OutputFormat format = a.format == "json"    ? OutputFormat::kJson
                              : a.format == "table" ? OutputFormat::kTable
                                                    : OutputFormat::kCsv;
  if (a.output == "-") {
    emit(result, format, out);
  } else {
    std::ofstream file(a.output, std::ios::binary);
    if (!file) throw UsageError("cannot open output file " + a.output);
    emit(result, format, file);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
  std::string config;
  double disturbance_rate = 0.0;
  std::optional<double> carbon_rent;
  long long replicates = 10000;
  double horizon = 6000.0;
  std::uint64_t seed = 42;
  long long threads = 0;
  std::string regime = "both";
  std::string format = "table";
};

json comparison(double analytic, const OracleEstimate& e) {
  const double diff = e.mean - analytic;
  // Agreement to rounding counts as exact even when the standard error is ~0.
  const bool exact = std::abs(diff) <= 1e-9 * std::max(1.0, std::abs(analytic));
  const double z = exact || e.standard_error == 0.0 ? 0.0 : diff / e.standard_error;
  return {
      {"analytic", analytic},
      {"estimate", e.mean},
      {"standard_error", e.standard_error},
      {"z_score", z},
      {"within_3_se", exact || std::abs(diff) <= 3.0 * e.standard_error},
  };
}

int oracle(const OracleArgs& a, std::ostream& out, std::ostream&) {
  if (a.replicates <= 0) throw UsageError("--replicates must be positive");
  if (a.threads < 0) throw UsageError("--threads must be >= 0");
  const ConfigFile config = resolve_config(a.config);
  const double rent = a.carbon_rent.value_or(config.carbon_rent_per_ton_year);
  const OracleConfig oc{.replicates = static_cast<std::size_t>(a.replicates),
                        .horizon = a.horizon,
                        .seed = a.seed,
                        .burn_in = 0.0,
                        .threads = static_cast<unsigned>(a.threads)};

  json doc = {
      {"disturbance_rate", a.disturbance_rate},
      {"replicates", a.replicates},
      {"horizon_years", a.horizon},
      {"seed", a.seed},
  };
  if (a.regime == "rf" || a.regime == "both") {
    const Scenario s{.disturbance_rate = a.disturbance_rate, .carbon_rent_price = 0.0};
    const EconomicSummary analytic = rf_summary(config.rotation, s);
    const RfOracleResult est = simulate_rf(config.rotation, s, oc);
    doc["rf"] = {
        {"profit_rate", comparison(analytic.expected_gross_profit_rate, est.profit_rate)},
        {"capitalization", comparison(analytic.expected_capitalization, est.capitalization)},
        {"survival", comparison(analytic.survival_to_harvest, est.survival)},
    };
  }
  if (a.regime == "ccf" || a.regime == "both") {
    const Scenario bare{.disturbance_rate = a.disturbance_rate, .carbon_rent_price = 0.0};
    const Scenario rented{.disturbance_rate = a.disturbance_rate, .carbon_rent_price = rent};
    doc["ccf"] = {
        {"profit_rate", comparison(ccf_summary(config.ccf, bare).expected_gross_profit_rate,
                                   simulate_ccf(config.ccf, bare, oc))},
        {"profit_rate_with_rent",
         comparison(ccf_summary(config.ccf, rented).expected_gross_profit_rate,
                    simulate_ccf(config.ccf, rented, oc))},
    };
  }

  if (a.format == "json") {
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  out << "disturbance rate " << std::setprecision(8) << a.disturbance_rate << " 1/a, "
      << a.replicates << " replicates, horizon " << a.horizon << " a, seed " << a.seed << '\n';
  out << std::left << std::setw(28) << "quantity" << std::right << std::setw(18) << "analytic"
      << std::setw(18) << "estimate" << std::setw(18) << "std. error" << std::setw(10) << "z"
      << '\n';
  for (const char* regime : {"rf", "ccf"}) {
    if (!doc.contains(regime)) continue;
    for (const auto& [name, c] : doc[regime].items()) {
      out << std::left << std::setw(28) << (std::string(regime) + "." + name) << std::right
          << std::setw(18) << format_number(c["analytic"].get<double>()) << std::setw(18)
          << format_number(c["estimate"].get<double>()) << std::setw(18)
          << format_number(c["standard_error"].get<double>()) << std::setw(10) << std::fixed
          << std::setprecision(2) << c["z_score"].get<double>() << std::defaultfloat << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- recovery

struct RecoveryArgs {
  double rotation_age = 0.0;
  std::string density = "uniform";
};

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("invalid " + what + ": " + text);
  return v;
}

int recovery(const RecoveryArgs& a, std::ostream& out, std::ostream&) {
  const std::string& d = a.density;
  std::optional<RecoveryDensity> k;
  if (d == "uniform") {
    k = RecoveryDensity::uniform(a.rotation_age);
  } else if (d.starts_with("point:")) {
    k = RecoveryDensity::point_mass(a.rotation_age, parse_number(d.substr(6), "point age"));
  } else if (d.starts_with("exp:")) {
    k = RecoveryDensity::truncated_exponential(a.rotation_age,
                                               parse_number(d.substr(4), "exponential rate"));
  } else {
    throw UsageError("--density must be uniform, point:<age> or exp:<rate>");
  }
  out << std::setprecision(10) << expected_recovery_time(*k) << std::defaultfloat << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected capital return of forest stands under stand-replacing disturbances",
               "silvarisk"};
  app.footer(kUnits);
  app.require_subcommand(1);

  CompareArgs compare_args;
  auto* compare_cmd = app.add_subcommand("compare", "Evaluate RF and CCF at one disturbance rate");
  compare_cmd->add_option("--config", compare_args.config, "Scenario JSON file");
  compare_cmd->add_option("--disturbance-rate", compare_args.disturbance_rate,
                          "Stand-replacing disturbances per year")
      ->required()
      ->check(CLI::NonNegativeNumber);
  compare_cmd->add_option("--carbon-rent", compare_args.carbon_rent,
                          "Carbon rent, overrides the config")
      ->check(CLI::NonNegativeNumber);
  compare_cmd->add_option("--format", compare_args.format)
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate both regimes over a range of rates");
  sweep_cmd->add_option("--config", sweep_args.config, "Scenario JSON file");
  sweep_cmd->add_option("--rate-min", sweep_args.rate_min)->capture_default_str();
  sweep_cmd->add_option("--rate-max", sweep_args.rate_max, "Default 1/180")
      ->capture_default_str();
  sweep_cmd->add_option("--steps", sweep_args.steps)->capture_default_str();
  sweep_cmd->add_option("--carbon-rent", sweep_args.carbon_rent,
                        "Carbon rent, overrides the config")
      ->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--output", sweep_args.output, "Output path, - for stdout")
      ->capture_default_str();
  sweep_cmd->add_option("--format", sweep_args.format)
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();

  OracleArgs oracle_args;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Monte Carlo check of the analytic results");
  oracle_cmd->add_option("--config", oracle_args.config, "Scenario JSON file");
  oracle_cmd->add_option("--disturbance-rate", oracle_args.disturbance_rate)
      ->required()
      ->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--carbon-rent", oracle_args.carbon_rent,
                         "Carbon rent, overrides the config")
      ->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--replicates", oracle_args.replicates)->capture_default_str();
  oracle_cmd->add_option("--horizon-years", oracle_args.horizon)->capture_default_str();
  oracle_cmd->add_option("--seed", oracle_args.seed)->capture_default_str();
  oracle_cmd->add_option("--threads", oracle_args.threads, "0 = hardware concurrency")
      ->capture_default_str();
  oracle_cmd->add_option("--regime", oracle_args.regime)
      ->check(CLI::IsMember({"rf", "ccf", "both"}))
      ->capture_default_str();
  oracle_cmd->add_option("--format", oracle_args.format)
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  RecoveryArgs recovery_args;
  auto* recovery_cmd =
      app.add_subcommand("recovery", "Expected recovery time after a regenerating disturbance");
  recovery_cmd->add_option("--rotation-age", recovery_args.rotation_age)->required();
  recovery_cmd->add_option("--density", recovery_args.density,
                           "uniform | point:<age> | exp:<rate>")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Prints help for --help (exit 0) or the parse error.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compare_cmd) return compare(compare_args, out, err);
    if (*sweep_cmd) return sweep(sweep_args, out, err);
    if (*oracle_cmd) return oracle(oracle_args, out, err);
    if (*recovery_cmd) return recovery(recovery_args, out, err);
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // ParameterError, DomainError, CalibrationError, UsageError, I/O failures.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("silvarisk");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace silvarisk::cli
