#include "silvarisk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "silvarisk/errors.hpp"

namespace silvarisk {
namespace {

struct Panel {
  double lower, mid, upper;
  double f_lower, f_mid, f_upper;
  double simpson;
};

class AdaptiveSimpson {
 public:
  AdaptiveSimpson(const std::function<double(double)>& f, int max_depth)
      : f_(f), max_depth_(max_depth) {}

  // Halving the tolerance per level stalls on integrable kinks such as a^0.1
  // at a = 0. Panels far below budget are accepted, and at the depth limit a
  // panel may spend its whole top-level budget.
  void set_budget(double panel_tolerance) {
    floor_ = panel_tolerance * 0x1p-20;
    root_ = panel_tolerance;
  }

  double eval(double x) const {
    const double y = f_(x);
    if (!std::isfinite(y)) {
      throw NumericalError("integrand is not finite at x = " + std::to_string(x));
    }
    return y;
  }

  Panel make_panel(double a, double fa, double b, double fb) const {
    const double m = 0.5 * (a + b);
    const double fm = eval(m);
    return {a, m, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb)};
  }

  double refine(const Panel& p, double abs_tol, int depth) const {
    const Panel left = make_panel(p.lower, p.f_lower, p.mid, p.f_mid);
    const Panel right = make_panel(p.mid, p.f_mid, p.upper, p.f_upper);
    const double sum = left.simpson + right.simpson;
    const double delta = sum - p.simpson;
    // Second clause: the interval has collapsed to adjacent doubles.
    if (std::abs(delta) <= 15.0 * std::max(abs_tol, floor_) || left.mid <= p.lower ||
        right.mid >= p.upper) {
      return sum + delta / 15.0;
    }
    if (depth >= max_depth_) {
      if (std::abs(delta) <= 15.0 * root_) return sum + delta / 15.0;
      throw NumericalError("adaptive Simpson did not converge on [" +
                           std::to_string(p.lower) + ", " +
                           std::to_string(p.upper) + "] at depth " +
                           std::to_string(depth));
    }
    return refine(left, 0.5 * abs_tol, depth + 1) +
           refine(right, 0.5 * abs_tol, depth + 1);
  }

 private:
  const std::function<double(double)>& f_;
  int max_depth_;
  double floor_ = 0.0;
  double root_ = 0.0;
};

}  // namespace

double integrate(const std::function<double(double)>& f, double lower,
                 double upper, QuadratureOptions options) {
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    throw ParameterError("integration bounds must be finite");
  }
  if (!(options.relative_tolerance > 0.0) || options.max_depth < 1) {
    throw ParameterError("quadrature tolerance and depth must be positive");
  }
  if (lower == upper) return 0.0;
  if (upper < lower) return -integrate(f, upper, lower, options);

  // A coarse 4-panel pass sets the scale for the relative tolerance.
  constexpr int kInitialPanels = 4;
  AdaptiveSimpson engine(f, options.max_depth);
  const double width = (upper - lower) / kInitialPanels;
  Panel panels[kInitialPanels];
  double f_prev = engine.eval(lower);
  double coarse = 0.0;
  double coarse_abs = 0.0;
  for (int i = 0; i < kInitialPanels; ++i) {
    const double a = lower + i * width;
    const double b = (i + 1 == kInitialPanels) ? upper : lower + (i + 1) * width;
    const double fb = engine.eval(b);
    panels[i] = engine.make_panel(a, f_prev, b, fb);
    coarse += panels[i].simpson;
    coarse_abs += std::abs(panels[i].simpson);
    f_prev = fb;
  }

  // Floor the scale so an integral that cancels to ~0 still terminates.
  const double scale = std::max(std::abs(coarse), 1e-3 * coarse_abs);
  const double abs_tol = options.relative_tolerance * scale / kInitialPanels;
  engine.set_budget(abs_tol);
  if (scale == 0.0) {
    // Integrand vanished at every sample; refine against an absolute floor.
    double total = 0.0;
    for (const Panel& p : panels) total += engine.refine(p, 1e-300, 1);
    return total;
  }

  double total = 0.0;
  for (const Panel& p : panels) total += engine.refine(p, abs_tol, 1);
  return total;
}

}  // namespace silvarisk
