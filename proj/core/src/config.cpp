#include "silvarisk/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "silvarisk/errors.hpp"

namespace silvarisk {
namespace {

using nlohmann::json;

const json& object_member(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path + "." + key, "missing");
  if (!it->is_object()) throw ConfigError(path + "." + key, "expected an object");
  return *it;
}

double number_member(const json& obj, const std::string& key, const std::string& path) {
  const std::string where = path + "." + key;
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where, "missing");
  if (!it->is_number()) throw ConfigError(where, "expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ConfigError(where, "must be finite");
  return v;
}

double positive(double v, const std::string& where) {
  if (!(v > 0.0)) throw ConfigError(where, "must be > 0");
  return v;
}

double nonnegative(double v, const std::string& where) {
  if (v < 0.0) throw ConfigError(where, "must be >= 0");
  return v;
}

std::vector<ValuePoint> read_points(const json& curve, const std::string& path) {
  const std::string where = path + ".points";
  auto it = curve.find("points");
  if (it == curve.end()) throw ConfigError(where, "missing");
  if (!it->is_array()) throw ConfigError(where, "expected an array");
  std::vector<ValuePoint> points;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& p = (*it)[i];
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
      points.push_back({p[0].get<double>(), p[1].get<double>()});
    } else if (p.is_object()) {
      points.push_back({number_member(p, "age", at), number_member(p, "value", at)});
    } else {
      throw ConfigError(at, "expected [age, value] or {\"age\", \"value\"}");
    }
    if (!std::isfinite(points.back().age) || !std::isfinite(points.back().value)) {
      throw ConfigError(at, "must be finite");
    }
  }
  return points;
}

}  // namespace

ConfigFile parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("$", "expected an object");

  const std::string rp = "$.rotation";
  const json& rot = object_member(doc, "rotation", "$");
  RotationParameters params{
      .rotation_age = positive(number_member(rot, "rotation_age_years", rp),
                               rp + ".rotation_age_years"),
      .regeneration_cost = nonnegative(number_member(rot, "regeneration_cost", rp),
                                       rp + ".regeneration_cost"),
      .harvest_revenue =
          positive(number_member(rot, "harvest_revenue", rp), rp + ".harvest_revenue"),
      .land_value = nonnegative(number_member(rot, "land_value", rp), rp + ".land_value"),
  };

  const std::string cp = rp + ".tree_value_curve";
  const json& curve_doc = object_member(rot, "tree_value_curve", rp);
  auto type_it = curve_doc.find("type");
  if (type_it == curve_doc.end() || !type_it->is_string()) {
    throw ConfigError(cp + ".type", "expected \"power\", \"calibrated\" or \"table\"");
  }
  const std::string type = type_it->get<std::string>();

  std::optional<double> calibrated;
  std::optional<TreeValueCurve> curve;
  try {
    if (type == "power") {
      const double g = positive(number_member(curve_doc, "exponent", cp), cp + ".exponent");
      curve = TreeValueCurve::power(params.rotation_age, params.harvest_revenue, g);
    } else if (type == "calibrated") {
      const std::string where = cp + ".target_expected_capitalization";
      const double target = number_member(curve_doc, "target_expected_capitalization", cp);
      try {
        calibrated = calibrate_power_exponent(params, target);
      } catch (const CalibrationError& e) {
        throw ConfigError(where, e.what());
      }
      curve = TreeValueCurve::power(params.rotation_age, params.harvest_revenue, *calibrated);
    } else if (type == "table") {
      curve = TreeValueCurve::table(read_points(curve_doc, cp));
    } else {
      throw ConfigError(cp + ".type", "unknown curve type \"" + type + "\"");
    }
  } catch (const ParameterError& e) {
    throw ConfigError(cp, e.what());
  }

  std::optional<RotationRegime> rotation;
  try {
    rotation.emplace(params, *curve);
  } catch (const ParameterError& e) {
    throw ConfigError(rp, e.what());
  }

  const std::string fp = "$.ccf";
  const json& ccf_doc = object_member(doc, "ccf", "$");
  CcfRegime ccf{
      .gross_profit_rate = number_member(ccf_doc, "gross_profit_rate", fp),
      .capitalization =
          positive(number_member(ccf_doc, "capitalization", fp), fp + ".capitalization"),
      .carbon_stock_surplus = nonnegative(
          number_member(ccf_doc, "carbon_stock_surplus_tons", fp), fp + ".carbon_stock_surplus_tons"),
  };

  double rent = 0.0;
  if (doc.contains("carbon_rent_per_ton_year")) {
    rent = nonnegative(number_member(doc, "carbon_rent_per_ton_year", "$"),
                       "$.carbon_rent_per_ton_year");
  }
  return ConfigFile{.rotation = std::move(*rotation),
                    .ccf = ccf,
                    .carbon_rent_per_ton_year = rent,
                    .calibrated_exponent = calibrated};
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ":" + e.path(), e.message());
  }
}

ConfigFile default_config() {
  const RotationParameters p = austria_spruce_rotation_parameters();
  const double gamma = calibrate_power_exponent(p, kAustriaSpruceExpectedCapitalization);
  return ConfigFile{
      .rotation = RotationRegime(p, TreeValueCurve::power(p.rotation_age, p.harvest_revenue, gamma)),
      .ccf = austria_spruce_ccf(),
      .carbon_rent_per_ton_year = kAustriaSpruceCarbonRent,
      .calibrated_exponent = gamma,
  };
}

}  // namespace silvarisk
