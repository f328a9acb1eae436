#pragma once

// Test-only reference computations. Nothing here calls into the library's
// quadrature or density code, so agreement is an independent check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

namespace silvarisk::testing {

// Values computed with mpmath at 30 digits for the Austrian spruce case
// (tau = 60 a, E = 2000, H = 18000, L = 10000, gamma = 7/11, m = 1/180).
namespace frozen {
inline constexpr double kDensityAtZero = 0.0195984804064284945806;
inline constexpr double kDensityAtRotation = 0.0140429248508729390251;
inline constexpr double kSurvival60 = 0.716531310573789250426;
inline constexpr double kSurvival30 = 0.846481724890614074045;
inline constexpr double kExpectedRelativeValue = 0.586434017899578598327;  // E[(a/60)^(7/11)]
inline constexpr double kRecoveryTimeExp = 28.3364116105722585293;
inline constexpr double kRfProfit = 213.575686502855913290;
inline constexpr double kRfCapitalization = 20555.8123221924147699;
inline constexpr double kRfReturn = 0.0103900387469618928142;
inline constexpr double kRfReturnChange = -0.181784448676750940879;
inline constexpr double kFirstBinMass = 0.190640212161074443683;   // [0, 10)
inline constexpr double kLastBinMass = 0.144403312782213169643;    // [50, 60]
inline constexpr double kCapitalizationAt30 = 21579.9840820848861140;
inline constexpr double kImpulsePv = 8401.17651957899734012;       // 18000 e^-0.762
}  // namespace frozen

inline constexpr double kRate = 1.0 / 180.0;

// Composite Simpson on a fixed uniform grid of n (even) panels.
inline double fixed_grid_simpson(const std::function<double(double)>& f, double a, double b,
                                 int n) {
  const double h = (b - a) / n;
  long double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0L : 2.0L) * f(a + i * h);
  return static_cast<double>(sum * h / 3.0L);
}

// Closed-form density written out independently of AgeDensity.
inline double reference_density(double tau, double m, double a) {
  if (m == 0.0) return 1.0 / tau;
  const long double M = m;
  return static_cast<double>(M * std::exp(-a * M) / -std::expm1(-tau * M));
}

// E[a^k] under the truncated exponential density on [0, tau], from the power
// series of the integral of a^k e^{-m a}. Long double absorbs the cancellation
// for m * tau up to ~12.
inline double reference_moment(double tau, double m, int k) {
  const auto partial = [&](int power) {
    const long double T = tau, x = -static_cast<long double>(m) * T;
    long double term = 1.0L, sum = 0.0L;
    for (int n = 0; n < 200; ++n) {
      if (n > 0) term *= x / n;
      sum += term / (n + power + 1);
    }
    return std::pow(T, power + 1) * sum;
  };
  return static_cast<double>(partial(k) / partial(0));
}

// Hand-rolled generator for property tests; seeded so failures reproduce.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

 private:
  std::mt19937_64 engine_;
};

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace silvarisk::testing
