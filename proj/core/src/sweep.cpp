#include "silvarisk/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "silvarisk/errors.hpp"

namespace silvarisk {
namespace {

using nlohmann::json;

double relative_change(double value, double baseline) {
  if (baseline == 0.0) {
    return value == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  }
  return value / baseline - 1.0;
}

RelativeChanges changes_against(const SweepRow& row, const SweepRow& base) {
  return {
      .rf_return = relative_change(row.rf.capital_return_rate, base.rf.capital_return_rate),
      .rf_profit = relative_change(row.rf.expected_gross_profit_rate,
                                   base.rf.expected_gross_profit_rate),
      .rf_capitalization =
          relative_change(row.rf.expected_capitalization, base.rf.expected_capitalization),
      .rf_survival = relative_change(row.rf.survival_to_harvest, base.rf.survival_to_harvest),
      .ccf_profit = relative_change(row.ccf.expected_gross_profit_rate,
                                    base.ccf.expected_gross_profit_rate),
      .density_at_zero = relative_change(row.rf.density_at_zero, base.rf.density_at_zero),
      .density_at_rotation =
          relative_change(row.rf.density_at_rotation, base.rf.density_at_rotation),
  };
}

// JSON cannot hold NaN; it travels as null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json summary_to_json(const EconomicSummary& s) {
  return {
      {"expected_gross_profit_rate", number(s.expected_gross_profit_rate)},
      {"expected_capitalization", number(s.expected_capitalization)},
      {"capital_return_rate", number(s.capital_return_rate)},
      {"survival_to_harvest", number(s.survival_to_harvest)},
      {"density_at_zero", number(s.density_at_zero)},
      {"density_at_rotation", number(s.density_at_rotation)},
      {"loss_exceeds_profit", s.loss_exceeds_profit},
  };
}

json changes_to_json(const RelativeChanges& c) {
  return {
      {"rf_return", number(c.rf_return)},
      {"rf_profit", number(c.rf_profit)},
      {"rf_capitalization", number(c.rf_capitalization)},
      {"rf_survival", number(c.rf_survival)},
      {"ccf_profit", number(c.ccf_profit)},
      {"density_at_zero", number(c.density_at_zero)},
      {"density_at_rotation", number(c.density_at_rotation)},
  };
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path + "." + key, "missing");
  return *it;
}

double read_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw ConfigError(path + "." + key, "expected a number");
  return v.get<double>();
}

bool read_bool(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_boolean()) throw ConfigError(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

EconomicSummary summary_from_json(const json& j, const std::string& path) {
  return {
      .expected_gross_profit_rate = read_number(j, "expected_gross_profit_rate", path),
      .expected_capitalization = read_number(j, "expected_capitalization", path),
      .capital_return_rate = read_number(j, "capital_return_rate", path),
      .survival_to_harvest = read_number(j, "survival_to_harvest", path),
      .density_at_zero = read_number(j, "density_at_zero", path),
      .density_at_rotation = read_number(j, "density_at_rotation", path),
      .loss_exceeds_profit = read_bool(j, "loss_exceeds_profit", path),
  };
}

RelativeChanges changes_from_json(const json& j, const std::string& path) {
  return {
      .rf_return = read_number(j, "rf_return", path),
      .rf_profit = read_number(j, "rf_profit", path),
      .rf_capitalization = read_number(j, "rf_capitalization", path),
      .rf_survival = read_number(j, "rf_survival", path),
      .ccf_profit = read_number(j, "ccf_profit", path),
      .density_at_zero = read_number(j, "density_at_zero", path),
      .density_at_rotation = read_number(j, "density_at_rotation", path),
  };
}

std::vector<double> csv_fields(const SweepRow& r) {
  const RelativeChanges& c = r.relative_changes;
  return {r.disturbance_rate,
          r.rf.expected_gross_profit_rate,
          r.rf.expected_capitalization,
          r.rf.capital_return_rate,
          r.rf.survival_to_harvest,
          r.ccf.expected_gross_profit_rate,
          r.ccf.expected_capitalization,
          r.ccf.capital_return_rate,
          r.ccf_with_rent.expected_gross_profit_rate,
          r.ccf_with_rent.capital_return_rate,
          c.rf_return,
          c.rf_profit,
          c.rf_capitalization,
          c.rf_survival,
          c.ccf_profit,
          c.density_at_zero,
          c.density_at_rotation};
}

void emit_csv(const SweepResult& result, std::ostream& out) {
  out << csv_header() << '\n';
  for (const SweepRow& row : result.rows) {
    bool first = true;
    for (double v : csv_fields(row)) {
      if (!first) out << ',';
      out << format_number(v);
      first = false;
    }
    out << '\n';
  }
}

void emit_json(const SweepResult& result, std::ostream& out) {
  json rows = json::array();
  for (const SweepRow& row : result.rows) {
    rows.push_back({
        {"disturbance_rate", number(row.disturbance_rate)},
        {"rf", summary_to_json(row.rf)},
        {"ccf", summary_to_json(row.ccf)},
        {"ccf_with_rent", summary_to_json(row.ccf_with_rent)},
        {"relative_changes", changes_to_json(row.relative_changes)},
    });
  }
  const json doc = {
      {"carbon_rent_price", number(result.carbon_rent_price)},
      {"baseline_undisturbed", result.baseline_undisturbed},
      {"rows", std::move(rows)},
  };
  out << doc.dump(2) << '\n';
}

void emit_table(const SweepResult& result, std::ostream& out) {
  struct Column {
    const char* title;
    int precision;
    double (*get)(const SweepRow&);
  };
  static constexpr Column kColumns[] = {
      {"dM/dt [1/a]", 6, [](const SweepRow& r) { return r.disturbance_rate; }},
      {"RF profit", 2, [](const SweepRow& r) { return r.rf.expected_gross_profit_rate; }},
      {"RF capital", 1, [](const SweepRow& r) { return r.rf.expected_capitalization; }},
      {"RF return", 6, [](const SweepRow& r) { return r.rf.capital_return_rate; }},
      {"RF survival", 4, [](const SweepRow& r) { return r.rf.survival_to_harvest; }},
      {"CCF profit", 2, [](const SweepRow& r) { return r.ccf.expected_gross_profit_rate; }},
      {"CCF return", 6, [](const SweepRow& r) { return r.ccf.capital_return_rate; }},
      {"CCF+rent return", 6, [](const SweepRow& r) { return r.ccf_with_rent.capital_return_rate; }},
      {"dRF return", 4, [](const SweepRow& r) { return r.relative_changes.rf_return; }},
      {"dCCF profit", 4, [](const SweepRow& r) { return r.relative_changes.ccf_profit; }},
  };
  constexpr int kWidth = 16;
  for (const Column& c : kColumns) out << std::setw(kWidth) << c.title;
  out << '\n';
  for (const SweepRow& row : result.rows) {
    for (const Column& c : kColumns) {
      out << std::setw(kWidth) << std::fixed << std::setprecision(c.precision) << c.get(row);
    }
    out << '\n';
  }
  out << std::defaultfloat;
}

}  // namespace

SweepResult run_sweep(const RotationRegime& rf, const CcfRegime& ccf, double carbon_rent_price,
                      double rate_min, double rate_max, std::size_t steps) {
  if (steps < 2) throw ParameterError("sweep needs at least two steps");
  if (!std::isfinite(rate_min) || !std::isfinite(rate_max) || rate_min < 0.0 ||
      !(rate_min < rate_max)) {
    throw ParameterError("sweep requires 0 <= rate_min < rate_max");
  }
  ccf.validate();

  SweepResult result;
  result.carbon_rent_price = carbon_rent_price;
  result.baseline_undisturbed = rate_min == 0.0;
  result.rows.reserve(steps);
  const double step = (rate_max - rate_min) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const double m = i + 1 == steps ? rate_max : rate_min + static_cast<double>(i) * step;
    SweepRow row;
    row.disturbance_rate = m;
    row.rf = rf_summary(rf, {.disturbance_rate = m, .carbon_rent_price = 0.0});
    row.ccf = ccf_summary(ccf, {.disturbance_rate = m, .carbon_rent_price = 0.0});
    row.ccf_with_rent =
        ccf_summary(ccf, {.disturbance_rate = m, .carbon_rent_price = carbon_rent_price});
    result.rows.push_back(row);
  }
  const SweepRow base = result.rows.front();
  for (SweepRow& row : result.rows) row.relative_changes = changes_against(row, base);
  return result;
}

std::string_view csv_header() {
  return "disturbance_rate,rf_profit,rf_capitalization,rf_return,rf_survival,ccf_profit,"
         "ccf_capitalization,ccf_return,ccf_rent_profit,ccf_rent_return,rel_rf_return,"
         "rel_rf_profit,rel_rf_capitalization,rel_rf_survival,rel_ccf_profit,"
         "rel_density_zero,rel_density_rotation";
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.10g", value);
  return buf;
}

void emit(const SweepResult& result, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::kCsv:
      emit_csv(result, out);
      break;
    case OutputFormat::kJson:
      emit_json(result, out);
      break;
    case OutputFormat::kTable:
      emit_table(result, out);
      break;
  }
  out.flush();
  if (!out) throw std::ios_base::failure("failed to write sweep output");
}

std::string emit(const SweepResult& result, OutputFormat format) {
  std::ostringstream out;
  emit(result, format, out);
  return out.str();
}

SweepResult parse_sweep_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", e.what());
  }
  SweepResult result;
  result.carbon_rent_price = read_number(doc, "carbon_rent_price", "$");
  result.baseline_undisturbed = read_bool(doc, "baseline_undisturbed", "$");
  const json& rows = member(doc, "rows", "$");
  if (!rows.is_array()) throw ConfigError("$.rows", "expected an array");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string path = "$.rows[" + std::to_string(i) + "]";
    const json& r = rows[i];
    SweepRow row;
    row.disturbance_rate = read_number(r, "disturbance_rate", path);
    row.rf = summary_from_json(member(r, "rf", path), path + ".rf");
    row.ccf = summary_from_json(member(r, "ccf", path), path + ".ccf");
    row.ccf_with_rent =
        summary_from_json(member(r, "ccf_with_rent", path), path + ".ccf_with_rent");
    row.relative_changes =
        changes_from_json(member(r, "relative_changes", path), path + ".relative_changes");
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace silvarisk
