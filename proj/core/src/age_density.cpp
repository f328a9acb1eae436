#include "silvarisk/age_density.hpp"

#include <cmath>
#include <string>

#include "silvarisk/errors.hpp"
#include "silvarisk/quadrature.hpp"

namespace silvarisk {
namespace {

// Below this m*tau the closed-form normalization m / (1 - exp(-m tau)) is
// replaced by its series.
constexpr double kSeriesThreshold = 1e-8;

double normalization(double tau, double m) {
  const double x = m * tau;
  if (x < kSeriesThreshold) {
    return (1.0 + x / 2.0 + x * x / 12.0) / tau;
  }
  return m / -std::expm1(-x);
}

void require_finite_nonnegative(double value, const char* what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ParameterError(std::string(what) + " must be finite and >= 0, got " +
                         std::to_string(value));
  }
}

void require_positive(double value, const char* what) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw ParameterError(std::string(what) + " must be finite and > 0, got " +
                         std::to_string(value));
  }
}

}  // namespace

AgeDensity::AgeDensity(double rotation_age, double disturbance_rate)
    : rotation_age_(rotation_age), disturbance_rate_(disturbance_rate) {
  require_positive(rotation_age, "rotation age");
  require_finite_nonnegative(disturbance_rate, "disturbance rate");
  normalization_ = normalization(rotation_age_, disturbance_rate_);
}

void AgeDensity::check_age(double age) const {
  if (!(age >= 0.0 && age <= rotation_age_)) {
    throw DomainError("age " + std::to_string(age) + " outside [0, " +
                      std::to_string(rotation_age_) + "]");
  }
}

double AgeDensity::pdf(double age) const {
  check_age(age);
  return normalization_ * std::exp(-age * disturbance_rate_);
}

double AgeDensity::survival(double age) const {
  check_age(age);
  return std::exp(-age * disturbance_rate_);
}

double AgeDensity::cdf(double age) const {
  check_age(age);
  const double m = disturbance_rate_;
  if (m * rotation_age_ < kSeriesThreshold) {
    // Integral of the series density (1/tau)(1 + m(tau/2 - a)).
    return (age / rotation_age_) * (1.0 + m * (rotation_age_ - age) / 2.0);
  }
  return std::expm1(-age * m) / std::expm1(-rotation_age_ * m);
}

double AgeDensity::probability_between(double from, double to) const {
  return cdf(to) - cdf(from);
}

double expected_over_age(const AgeDensity& density,
                         const std::function<double(double)>& f) {
  return integrate([&](double a) { return density.pdf(a) * f(a); }, 0.0,
                   density.rotation_age());
}

RecoveryDensity RecoveryDensity::uniform(double rotation_age) {
  require_positive(rotation_age, "rotation age");
  return {Kind::kUniform, rotation_age, 0.0};
}

RecoveryDensity RecoveryDensity::point_mass(double rotation_age, double age) {
  require_positive(rotation_age, "rotation age");
  if (!(age >= 0.0 && age <= rotation_age)) {
    throw ParameterError("point-mass age " + std::to_string(age) +
                         " outside [0, " + std::to_string(rotation_age) + "]");
  }
  return {Kind::kPointMass, rotation_age, age};
}

RecoveryDensity RecoveryDensity::truncated_exponential(double rotation_age,
                                                       double rate) {
  require_positive(rotation_age, "rotation age");
  require_finite_nonnegative(rate, "exponential rate");
  return {Kind::kTruncatedExponential, rotation_age, rate};
}

double RecoveryDensity::pdf(double age) const {
  if (!(age >= 0.0 && age <= rotation_age_)) {
    throw DomainError("age " + std::to_string(age) + " outside [0, " +
                      std::to_string(rotation_age_) + "]");
  }
  switch (kind_) {
    case Kind::kUniform:
      return 1.0 / rotation_age_;
    case Kind::kTruncatedExponential:
      return normalization(rotation_age_, parameter_) *
             std::exp(-age * parameter_);
    case Kind::kPointMass:
      break;
  }
  throw ParameterError("a point mass has no density");
}

double expected_recovery_time(const RecoveryDensity& k) {
  const double tau = k.rotation_age();
  switch (k.kind()) {
    case RecoveryDensity::Kind::kUniform:
      return tau / 2.0;
    case RecoveryDensity::Kind::kPointMass:
      return k.parameter();
    case RecoveryDensity::Kind::kTruncatedExponential: {
      const double m = k.parameter();
      const double x = m * tau;
      if (x < 1e-4) {
        return tau * (0.5 - x / 12.0 + x * x * x / 720.0);
      }
      // 1/m - tau exp(-x) / (1 - exp(-x))
      return 1.0 / m - tau / std::expm1(x);
    }
  }
  throw ParameterError("unknown recovery density kind");
}

}  // namespace silvarisk
