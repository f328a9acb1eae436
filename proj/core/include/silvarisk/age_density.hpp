#pragma once

#include <functional>

namespace silvarisk {

/// Stationary stand-age density on [0, rotation_age] under a constant
/// stand-replacing disturbance hazard.
///
/// With hazard m = 0 the density is uniform, 1/tau. With m > 0 it is the
/// survival curve exp(-a m) renormalized over the rotation,
///
///     p'(a) = m exp(-a m) / (1 - exp(-tau m)).
///
/// For m*tau below 1e-8 the normalization constant is evaluated from its
/// series so the density stays continuous as m -> 0. pdf(tau) equals
/// pdf(0) * survival(tau) bit-for-bit in both branches.
class AgeDensity {
 public:
  /// Throws ParameterError unless rotation_age > 0 and disturbance_rate >= 0
  /// (both finite).
  AgeDensity(double rotation_age, double disturbance_rate);

  double rotation_age() const noexcept { return rotation_age_; }
  double disturbance_rate() const noexcept { return disturbance_rate_; }

  /// Density at age a; DomainError outside [0, tau].
  double pdf(double age) const;

  /// Probability of escaping disturbance up to age a, exp(-a m).
  double survival(double age) const;

  /// P(age <= a) under the stationary density.
  double cdf(double age) const;

  /// Probability mass on [from, to] (both within [0, tau]).
  double probability_between(double from, double to) const;

  /// pdf(0): the rate at which stands are (re)established.
  double density_at_zero() const noexcept { return normalization_; }

 private:
  void check_age(double age) const;

  double rotation_age_;
  double disturbance_rate_;
  double normalization_;
};

/// E[f(age)] = integral of pdf(a) f(a) over [0, tau] by adaptive Simpson
/// (relative tolerance 1e-10, depth 40). Throws NumericalError on
/// non-convergence.
double expected_over_age(const AgeDensity& density,
                         const std::function<double(double)>& f);

/// Density of the stand age at which a regenerating disturbance is realized.
class RecoveryDensity {
 public:
  enum class Kind { kUniform, kPointMass, kTruncatedExponential };

  static RecoveryDensity uniform(double rotation_age);
  static RecoveryDensity point_mass(double rotation_age, double age);
  /// Exponential with the given rate, truncated to [0, rotation_age].
  static RecoveryDensity truncated_exponential(double rotation_age, double rate);

  Kind kind() const noexcept { return kind_; }
  double rotation_age() const noexcept { return rotation_age_; }
  /// Point-mass location (kPointMass) or the exponential rate.
  double parameter() const noexcept { return parameter_; }

  /// Density on [0, tau]; meaningless for the point mass.
  double pdf(double age) const;

 private:
  RecoveryDensity(Kind kind, double rotation_age, double parameter)
      : kind_(kind), rotation_age_(rotation_age), parameter_(parameter) {}

  Kind kind_;
  double rotation_age_;
  double parameter_;
};

/// Mean age at which a realized regenerating disturbance strikes, i.e. the
/// expected time needed to regrow what was lost.
double expected_recovery_time(const RecoveryDensity& k);

}  // namespace silvarisk
