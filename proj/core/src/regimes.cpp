#include "silvarisk/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "silvarisk/errors.hpp"

namespace silvarisk {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool condition, const std::string& message) {
  if (!condition) throw ParameterError(message);
}

bool finite_nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

double table_value(const std::vector<ValuePoint>& pts, double age) {
  auto hi = std::upper_bound(pts.begin(), pts.end(), age,
                             [](double a, const ValuePoint& p) { return a < p.age; });
  if (hi == pts.end()) return pts.back().value;
  auto lo = hi - 1;
  const double t = (age - lo->age) / (hi->age - lo->age);
  return lo->value + t * (hi->value - lo->value);
}

// Integral of the piecewise-linear table from 0 to age.
double table_cumulative(const std::vector<ValuePoint>& pts, double age) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const ValuePoint& a = pts[i - 1];
    const ValuePoint& b = pts[i];
    if (age <= a.age) break;
    const double end = std::min(age, b.age);
    const double v_end = a.value + (end - a.age) / (b.age - a.age) * (b.value - a.value);
    total += 0.5 * (a.value + v_end) * (end - a.age);
  }
  return total;
}

}  // namespace

TreeValueCurve TreeValueCurve::power(double rotation_age, double harvest_value,
                                     double exponent) {
  require(finite_positive(rotation_age), "tree value curve: rotation age must be > 0");
  require(finite_nonnegative(harvest_value), "tree value curve: harvest value must be >= 0");
  require(finite_positive(exponent), "tree value curve: exponent must be > 0");
  return {rotation_age, harvest_value, Power{exponent}};
}

TreeValueCurve TreeValueCurve::table(std::vector<ValuePoint> points) {
  require(points.size() >= 2, "tree value table needs at least two points");
  require(points.front().age == 0.0 && points.front().value == 0.0,
          "tree value table must start at (0, 0)");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(std::isfinite(points[i].age) && std::isfinite(points[i].value),
            "tree value table entries must be finite");
    if (i > 0) {
      require(points[i].age > points[i - 1].age,
              "tree value table ages must be strictly increasing");
      require(points[i].value >= points[i - 1].value,
              "tree value table values must be nondecreasing");
    }
  }
  const double tau = points.back().age;
  const double harvest = points.back().value;
  return {tau, harvest, Table{std::move(points)}};
}

double TreeValueCurve::value_at(double age) const {
  if (!(age >= 0.0 && age <= rotation_age_)) {
    throw DomainError("age " + std::to_string(age) + " outside [0, " +
                      std::to_string(rotation_age_) + "]");
  }
  return std::visit(
      Overloaded{
          [&](const Power& p) {
            return harvest_value_ * std::pow(age / rotation_age_, p.exponent);
          },
          [&](const Table& t) { return table_value(t.points, age); },
      },
      form_);
}

double TreeValueCurve::integral(double from, double to) const {
  if (!(from >= 0.0 && from <= to && to <= rotation_age_)) {
    throw DomainError("integration range [" + std::to_string(from) + ", " +
                      std::to_string(to) + "] outside [0, " +
                      std::to_string(rotation_age_) + "]");
  }
  return std::visit(
      Overloaded{
          [&](const Power& p) {
            const double g1 = p.exponent + 1.0;
            return harvest_value_ * rotation_age_ / g1 *
                   (std::pow(to / rotation_age_, g1) - std::pow(from / rotation_age_, g1));
          },
          [&](const Table& t) {
            return table_cumulative(t.points, to) - table_cumulative(t.points, from);
          },
      },
      form_);
}

TreeValueCurve TreeValueCurve::scaled(double factor) const {
  require(finite_positive(factor), "scale factor must be > 0");
  return std::visit(
      Overloaded{
          [&](const Power& p) { return power(rotation_age_, harvest_value_ * factor, p.exponent); },
          [&](const Table& t) {
            std::vector<ValuePoint> pts = t.points;
            for (ValuePoint& pt : pts) pt.value *= factor;
            return table(std::move(pts));
          },
      },
      form_);
}

RotationRegime::RotationRegime(RotationParameters parameters, TreeValueCurve curve)
    : parameters_(parameters), curve_(std::move(curve)) {
  require(finite_positive(parameters_.rotation_age), "rotation age must be > 0");
  require(finite_nonnegative(parameters_.regeneration_cost),
          "regeneration cost must be >= 0");
  require(finite_positive(parameters_.harvest_revenue), "harvest revenue must be > 0");
  require(finite_nonnegative(parameters_.land_value), "land value must be >= 0");
  // Exact match is too strict for table curves read from text.
  require(std::abs(curve_.rotation_age() - parameters_.rotation_age) <=
              1e-9 * parameters_.rotation_age,
          "tree value curve must end at the rotation age");
}

RotationRegime RotationRegime::scaled(double factor) const {
  require(finite_positive(factor), "scale factor must be > 0");
  RotationParameters p = parameters_;
  p.regeneration_cost *= factor;
  p.harvest_revenue *= factor;
  p.land_value *= factor;
  return {p, curve_.scaled(factor)};
}

void CcfRegime::validate() const {
  require(std::isfinite(gross_profit_rate), "CCF gross profit rate must be finite");
  require(finite_positive(capitalization), "CCF capitalization must be > 0");
  require(finite_nonnegative(carbon_stock_surplus), "CCF carbon stock surplus must be >= 0");
}

CcfRegime CcfRegime::scaled(double factor) const {
  require(finite_positive(factor), "scale factor must be > 0");
  return {gross_profit_rate * factor, capitalization * factor, carbon_stock_surplus};
}

void Scenario::validate() const {
  require(finite_nonnegative(disturbance_rate), "disturbance rate must be finite and >= 0");
  require(finite_nonnegative(carbon_rent_price), "carbon rent price must be finite and >= 0");
}

double calibrate_power_exponent(const RotationParameters& parameters,
                                double target_expected_capitalization) {
  const double land = parameters.land_value;
  const double harvest = parameters.harvest_revenue;
  const double target = target_expected_capitalization;
  if (!std::isfinite(target) || !(target > land && target < land + harvest)) {
    throw CalibrationError("target expected capitalization " + std::to_string(target) +
                           " must lie strictly between " + std::to_string(land) +
                           " and " + std::to_string(land + harvest));
  }
  return harvest / (target - land) - 1.0;
}

double capitalization_at_age(const RotationRegime& regime, double age) {
  return regime.land_value() + regime.tree_value_curve().value_at(age);
}

double capitalization_integral(const RotationRegime& regime, double from, double to) {
  return regime.land_value() * (to - from) + regime.tree_value_curve().integral(from, to);
}

RotationParameters austria_spruce_rotation_parameters() {
  return {.rotation_age = 60.0,
          .regeneration_cost = 2000.0,
          .harvest_revenue = 18000.0,
          .land_value = 10000.0};
}

RotationRegime austria_spruce_rotation() {
  const RotationParameters p = austria_spruce_rotation_parameters();
  const double gamma = calibrate_power_exponent(p, kAustriaSpruceExpectedCapitalization);
  return {p, TreeValueCurve::power(p.rotation_age, p.harvest_revenue, gamma)};
}

CcfRegime austria_spruce_ccf() {
  return {.gross_profit_rate = 154.0, .capitalization = 24000.0, .carbon_stock_surplus = 50.0};
}

}  // namespace silvarisk
