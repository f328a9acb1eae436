#pragma once

#include <variant>
#include <vector>

namespace silvarisk {

struct ValuePoint {
  double age;    // years
  double value;  // Eur/ha
};

/// Standing-tree value V(a) over one rotation, V(0) = 0, V(tau) = harvest value.
///
/// Either a power law V(a) = H (a/tau)^gamma or a piecewise-linear table.
class TreeValueCurve {
 public:
  struct Power {
    double exponent;
  };
  struct Table {
    std::vector<ValuePoint> points;
  };

  static TreeValueCurve power(double rotation_age, double harvest_value,
                              double exponent);
  /// Points must have strictly increasing ages, start at (0, 0) and be
  /// nondecreasing in value. The last point defines tau and the harvest value.
  static TreeValueCurve table(std::vector<ValuePoint> points);

  double rotation_age() const noexcept { return rotation_age_; }
  double harvest_value() const noexcept { return harvest_value_; }
  const std::variant<Power, Table>& form() const noexcept { return form_; }

  /// V(a); DomainError outside [0, tau].
  double value_at(double age) const;

  /// Exact integral of V over [from, to] within [0, tau].
  double integral(double from, double to) const;

  /// Copy with every value multiplied by factor > 0.
  TreeValueCurve scaled(double factor) const;

 private:
  TreeValueCurve(double rotation_age, double harvest_value,
                 std::variant<Power, Table> form)
      : rotation_age_(rotation_age),
        harvest_value_(harvest_value),
        form_(std::move(form)) {}

  double rotation_age_;
  double harvest_value_;
  std::variant<Power, Table> form_;
};

/// Cash-flow parameters of even-aged rotation forestry, without the value curve.
struct RotationParameters {
  double rotation_age;       // years
  double regeneration_cost;  // Eur/ha, paid at every (re)establishment
  double harvest_revenue;    // Eur/ha, received at age tau
  double land_value;         // Eur/ha
};

/// Even-aged rotation regime. Construction validates all fields and that the
/// curve spans the same rotation age.
class RotationRegime {
 public:
  RotationRegime(RotationParameters parameters, TreeValueCurve curve);

  const RotationParameters& parameters() const noexcept { return parameters_; }
  const TreeValueCurve& tree_value_curve() const noexcept { return curve_; }

  double rotation_age() const noexcept { return parameters_.rotation_age; }
  double regeneration_cost() const noexcept { return parameters_.regeneration_cost; }
  double harvest_revenue() const noexcept { return parameters_.harvest_revenue; }
  double land_value() const noexcept { return parameters_.land_value; }

  /// harvest_revenue <= regeneration_cost: allowed, but the undisturbed regime
  /// makes no profit.
  bool has_nonpositive_margin() const noexcept {
    return parameters_.harvest_revenue <= parameters_.regeneration_cost;
  }

  /// Every monetary quantity multiplied by factor > 0.
  RotationRegime scaled(double factor) const;

 private:
  RotationParameters parameters_;
  TreeValueCurve curve_;
};

/// Continuous-cover regime in its semi-stationary state.
struct CcfRegime {
  double gross_profit_rate;     // Eur/(ha a)
  double capitalization;        // Eur/ha, > 0
  double carbon_stock_surplus;  // tons/ha relative to rotation forestry

  void validate() const;
  CcfRegime scaled(double factor) const;
};

struct Scenario {
  double disturbance_rate = 0.0;   // 1/a
  double carbon_rent_price = 0.0;  // Eur/(ton a)

  void validate() const;
};

/// Power-law exponent gamma for which the uniform-age expected capitalization
/// land + H/(gamma + 1) hits the target. Target must lie strictly between
/// land_value and land_value + harvest_revenue, else CalibrationError.
double calibrate_power_exponent(const RotationParameters& parameters,
                                double target_expected_capitalization);

/// Land plus standing trees at age a.
double capitalization_at_age(const RotationRegime& regime, double age);

/// Integral of capitalization_at_age over [from, to] in closed form.
double capitalization_integral(const RotationRegime& regime, double from,
                               double to);

/// Calibration data of the Austrian spruce case (tau = 60 a, Eur/ha).
RotationParameters austria_spruce_rotation_parameters();
RotationRegime austria_spruce_rotation();
CcfRegime austria_spruce_ccf();
inline constexpr double kAustriaSpruceExpectedCapitalization = 21000.0;
inline constexpr double kAustriaSpruceCarbonRent = 2.0;

}  // namespace silvarisk
